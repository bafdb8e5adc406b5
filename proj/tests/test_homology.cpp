#include <catch2/catch_amalgamated.hpp>

#include "fincat/homology.hpp"
#include "fincat/pi1.hpp"
#include "fincat/twocat.hpp"
#include "helpers.hpp"

using namespace fincat;
using namespace fincat::testing;

TEST_CASE("smith normal form on small matrices", "[homology]") {
  auto snf = [](std::vector<std::vector<long long>> in) {
    std::vector<std::vector<Int>> M(in.size());
    for (size_t i = 0; i < in.size(); ++i) M[i] = std::vector<Int>(in[i].begin(), in[i].end());
    return smith_normal_form(M);
  };
  CHECK(snf({{2}}) == std::vector<Int>{2});
  CHECK(snf({{0}}) == std::vector<Int>{});
  CHECK(snf({{1, 0}, {0, 1}}) == std::vector<Int>{1, 1});
  CHECK(snf({{2, 4}, {6, 8}}) == std::vector<Int>{2, 4});
  // divisibility repair: diag(2,3) is not in normal form
  CHECK(snf({{2, 0}, {0, 3}}) == std::vector<Int>{1, 6});
  CHECK(snf({{4, 0}, {0, 6}}) == std::vector<Int>{2, 12});
  // a rank-1 matrix with content 3
  CHECK(snf({{3, 6}, {6, 12}}) == std::vector<Int>{3});
}

TEST_CASE("chain complex of a group-like nerve squares to zero", "[homology]") {
  auto X = nerve(z2_monoid(), 4);
  auto C = chain_complex(X, 4);
  CHECK(validate_complex(C).ok());
  REQUIRE(C.ranks == std::vector<int>{1, 1, 1, 1, 1});
  // boundary of the 2-simplex (g,g) is 2g; of the 3-simplex it cancels
  CHECK(C.boundary[2][0][0] == 2);
  CHECK(C.boundary[3][0][0] == 0);
  CHECK(C.boundary[4][0][0] == 2);
}

TEST_CASE("homology of the order-two group nerve", "[homology]") {
  auto H = homology(nerve(z2_monoid(), 4), 3);
  REQUIRE(H.k_max == 3);
  CHECK(H.degrees[0].betti == 1);
  CHECK(H.degrees[0].torsion.empty());
  CHECK(H.degrees[1].betti == 0);
  CHECK(H.degrees[1].torsion == std::vector<Int>{2});
  CHECK(H.degrees[2].betti == 0);
  CHECK(H.degrees[2].torsion.empty());
  CHECK(H.degrees[3].betti == 0);
  CHECK(H.degrees[3].torsion == std::vector<Int>{2});
  CHECK(homology_to_string(H) == "H_0 = Z\nH_1 = Z/2\nH_2 = 0\nH_3 = Z/2\n");
}

TEST_CASE("contractible nerves have point homology", "[homology]") {
  for (auto C : {ordinal(2), ordinal(3), span_category()}) {
    auto H = homology(nerve(C, 3), 2);
    CHECK(H.degrees[0].betti == 1);
    for (int k = 0; k <= 2; ++k) CHECK(H.degrees[k].torsion.empty());
    CHECK(H.degrees[1].betti == 0);
    CHECK(H.degrees[2].betti == 0);
  }
}

TEST_CASE("homology respects the truncation bound", "[homology]") {
  auto X = nerve(ordinal(1), 2);
  CHECK_THROWS_AS(homology(X, 2), PreconditionError);
  CHECK_NOTHROW(homology(X, 1));
}

TEST_CASE("parallel arrows give a circle", "[homology]") {
  auto H = homology(nerve(parallel_pair(), 3), 2);
  CHECK(H.degrees[0].betti == 1);
  CHECK(H.degrees[1].betti == 1);
  CHECK(H.degrees[1].torsion.empty());
  CHECK(H.degrees[2].betti == 0);
}

TEST_CASE("mod-p betti numbers detect torsion", "[homology]") {
  auto X = nerve(z2_monoid(), 4);
  CHECK(homology_mod(X, 3, 2) == std::vector<int>{1, 1, 1, 1});
  CHECK(homology_mod(X, 3, 3) == std::vector<int>{1, 0, 0, 0});
}

TEST_CASE("nerve homology is invariant under reversal", "[homology]") {
  for (auto C : {ordinal(2), span_category(), fence3(), z2_monoid(), parallel_pair()}) {
    auto A = homology(nerve(C, 3), 2);
    auto B = homology(nerve(opposite(C), 3), 2);
    std::string rep;
    INFO(rep);
    CHECK(homology_equal(A, B, 2, &rep));
  }
}

TEST_CASE("diagonal of the double nerve matches the lax nerve", "[homology]") {
  for (const auto& entry : two_category_suite()) {
    INFO(entry.first);
    auto D = compress_dense(diagonal(two_nerve(entry.second, 3)));
    auto G = geometric_nerve(entry.second, 3);
    auto HD = homology(D, 2);
    auto HG = homology(G, 2);
    std::string rep;
    bool eq = homology_equal(HD, HG, 2, &rep);
    INFO(rep);
    CHECK(eq);
  }
}

TEST_CASE("lax nerve homology survives both dualities", "[homology]") {
  for (const auto& entry : two_category_suite()) {
    INFO(entry.first);
    auto H = homology(geometric_nerve(entry.second, 3), 2);
    auto Ho = homology(geometric_nerve(op2(entry.second), 3), 2);
    auto Ht = homology(geometric_nerve(transpose2(entry.second), 3), 2);
    std::string rep;
    bool a = homology_equal(H, Ho, 2, &rep);
    INFO("one-arrow reversal: " << rep);
    CHECK(a);
    bool b = homology_equal(H, Ht, 2, &rep);
    INFO("two-cell reversal: " << rep);
    CHECK(b);
  }
}

TEST_CASE("coset enumeration on classic presentations", "[homology]") {
  // alternating group on four letters
  detail::CosetEnumerator a4(2, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2, 1, 2}}, 1000);
  auto n = a4.run();
  REQUIRE(n.has_value());
  CHECK(*n == 12);
  // quaternion group
  detail::CosetEnumerator q8(2, {{1, 1, 1, 1}, {1, 1, -2, -2}, {-2, 1, 2, 1}}, 1000);
  auto q = q8.run();
  REQUIRE(q.has_value());
  CHECK(*q == 8);
  // free group on one generator never closes
  detail::CosetEnumerator z(1, {}, 50);
  CHECK_FALSE(z.run().has_value());
}

TEST_CASE("fundamental group of simply connected nerves", "[pi1][homology]") {
  for (auto C : {ordinal(2), span_category(), fence3()}) {
    auto R = pi1(nerve(C, 3));
    REQUIRE(R.order_known);
    CHECK(R.order == 1);
    CHECK(R.abelian_rank == 0);
    CHECK(R.abelian_torsion.empty());
  }
}

TEST_CASE("fundamental group of the order-two group", "[pi1][homology]") {
  auto R = pi1(nerve(z2_monoid(), 3));
  CHECK(R.presentation.n_generators == 1);
  REQUIRE(R.order_known);
  CHECK(R.order == 2);
  CHECK(R.abelian_torsion == std::vector<Int>{2});

  // the lax nerve of its one-object double category tells the same story
  auto G = geometric_nerve(deloop(monoidal_z2()), 3);
  auto Rg = pi1(G);
  REQUIRE(Rg.order_known);
  CHECK(Rg.order == 2);
}

TEST_CASE("parallel arrows have infinite fundamental group", "[pi1][homology]") {
  auto R = pi1(nerve(parallel_pair(), 3));
  CHECK_FALSE(R.order_known);
  CHECK(R.certified_infinite);
  CHECK(R.abelian_rank == 1);
  CHECK(R.abelian_torsion.empty());
}

TEST_CASE("fundamental group preconditions", "[pi1][homology]") {
  CHECK_THROWS_AS(pi1(nerve(z2_monoid(), 1)), PreconditionError);
  CHECK_THROWS_AS(pi1(nerve(ordinal(2), 3), 7), PreconditionError);
  CHECK_THROWS_AS(pi1(nerve(discrete_category(2), 3)), PreconditionError);
}

TEST_CASE("abelianized fundamental group equals first homology", "[pi1][homology]") {
  std::vector<TruncatedSimplicialSet> samples;
  samples.push_back(nerve(z2_monoid(), 3));
  samples.push_back(nerve(parallel_pair(), 3));
  samples.push_back(nerve(span_category(), 3));
  samples.push_back(geometric_nerve(deloop(monoidal_z2()), 3));
  samples.push_back(geometric_nerve(walking_iso_two_cell(), 3));
  for (const auto& X : samples) {
    auto R = pi1(X);
    auto H = homology(X, 1);
    CHECK(R.abelian_rank == H.degrees[1].betti);
    CHECK(R.abelian_torsion == H.degrees[1].torsion);
  }
}
