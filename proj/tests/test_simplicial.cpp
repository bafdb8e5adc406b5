#include <catch2/catch_amalgamated.hpp>

#include "fincat/simplicial.hpp"
#include "helpers.hpp"

using namespace fincat;
using namespace fincat::testing;

TEST_CASE("nerve shapes of basic categories", "[simplicial]") {
  TruncatedSimplicialSet pt = nerve(ordinal(0), 3);
  CHECK(pt.count(0) == 1);
  CHECK(pt.count(1) == 0);
  CHECK(validate_tss(pt).ok());

  // one nondegenerate simplex per dimension: the chain g, g, ..., g
  TruncatedSimplicialSet z2 = nerve(z2_monoid(), 4);
  for (int n = 0; n <= 4; ++n) CHECK(z2.count(n) == 1);
  CHECK(validate_tss(z2).ok());
  // the inner face of (g,g) collapses to a degenerate edge on the vertex
  const SimplexRef& inner = z2.faces[2][0][1];
  CHECK(inner.base_dim == 0);
  CHECK(inner.surj.v == std::vector<int>{0, 0});
  CHECK(degeneracy_word(inner.surj) == std::vector<int>{0});

  // three objects, two nondegenerate edges, nothing above
  TruncatedSimplicialSet sp = nerve(span_category(), 3);
  CHECK(sp.count(0) == 3);
  CHECK(sp.count(1) == 2);
  CHECK(sp.count(2) == 0);
  CHECK(validate_tss(sp).ok());

  TruncatedSimplicialSet o2 = nerve(ordinal(2), 3);
  CHECK(o2.count(1) == 3);
  CHECK(o2.count(2) == 1);
  CHECK(o2.count(3) == 0);
  CHECK(validate_tss(o2).ok());
}

TEST_CASE("nerves validate across the base categories", "[simplicial]") {
  for (const FinCategory& C : {ordinal(3), span_category(), fence3(), z2_monoid(),
                               parallel_pair(), product(ordinal(1), ordinal(1))}) {
    TruncatedSimplicialSet X = nerve(C, 3);
    CHECK(validate_tss(X).ok());
    CHECK(X.count(0) == C.n_objects);
  }
}

TEST_CASE("ref_apply computes iterated faces in normal form", "[simplicial]") {
  TruncatedSimplicialSet X = nerve(z2_monoid(), 4);
  // vertex map of the 3-chain (g,g,g) under [0,3] -> picks endpoints
  SimplexRef top = X.top_ref(3, 0);
  OrdinalMap ends{1, 3, {0, 3}};
  SimplexRef e = ref_apply(X, top, ends);
  // g.g.g = g, a nondegenerate edge
  CHECK(e.nondegenerate());
  CHECK(e.base_dim == 1);
  OrdinalMap mid{1, 3, {0, 2}};
  SimplexRef m = ref_apply(X, top, mid);
  // g.g = e: collapses to the vertex
  CHECK(m.base_dim == 0);
  CHECK(m.surj.v == std::vector<int>{0, 0});
}

TEST_CASE("double nerve of the Z/2 delooping counts strings", "[simplicial]") {
  TruncatedBisimplicialSet B = two_nerve(deloop(monoidal_z2()), 3);
  CHECK(validate_bis(B).ok());
  for (int q = 0; q <= 3; ++q) CHECK(B.counts[0][q] == 1 << q);
  for (int p = 0; p <= 3; ++p) CHECK(B.counts[p][0] == 1);  // one object
  // no non-identity 2-cells: constant in the p direction
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) CHECK(B.counts[p][q] == B.counts[0][q]);
}

TEST_CASE("double nerves validate on the suite", "[simplicial]") {
  for (const auto& [name, T] : two_category_suite()) {
    INFO(name);
    TruncatedBisimplicialSet B = two_nerve(T, 2);
    CHECK(validate_bis(B).ok());
    for (int p = 0; p <= 2; ++p) CHECK(B.counts[p][0] == T.n_objects);
  }
}

TEST_CASE("diagonal of the double nerve of a category matches its nerve", "[simplicial]") {
  for (const FinCategory& C : {ordinal(2), span_category(), z2_monoid(), parallel_pair()}) {
    TruncatedBisimplicialSet B = two_nerve(from_category(C), 3);
    DenseSimplicialSet D = diagonal(B);
    CHECK(validate_dense(D).ok());
    TruncatedSimplicialSet X = compress_dense(D);
    CHECK(validate_tss(X).ok());
    TruncatedSimplicialSet Y = nerve(C, 3);
    for (int n = 0; n <= 3; ++n) {
      INFO("dimension " << n);
      CHECK(X.count(n) == Y.count(n));
    }
  }
}

TEST_CASE("geometric nerve of a category is its nerve", "[simplicial]") {
  for (const FinCategory& C : {ordinal(2), span_category(), z2_monoid()}) {
    TruncatedSimplicialSet G = geometric_nerve(from_category(C), 3);
    TruncatedSimplicialSet Y = nerve(C, 3);
    CHECK(validate_tss(G).ok());
    for (int n = 0; n <= 3; ++n) CHECK(G.count(n) == Y.count(n));
  }
}

TEST_CASE("geometric nerve of a discrete group delooping is the bar construction", "[simplicial]") {
  TruncatedSimplicialSet G = geometric_nerve(deloop(monoidal_z2()), 3);
  CHECK(validate_tss(G).ok());
  for (int n = 0; n <= 3; ++n) CHECK(G.count(n) == 1);  // only the g,g,...,g chain survives
}

TEST_CASE("geometric nerve of the walking 2-cell", "[simplicial]") {
  TruncatedSimplicialSet G = geometric_nerve(walking_two_cell(), 3);
  CHECK(validate_tss(G).ok());
  CHECK(G.count(0) == 2);
  CHECK(G.count(1) == 2);  // s and t
  CHECK(G.count(2) == 2);  // the two fillings by the walking cell m
}

TEST_CASE("geometric nerves validate on the suite", "[simplicial]") {
  for (const auto& [name, T] : two_category_suite()) {
    INFO(name);
    TruncatedSimplicialSet G = geometric_nerve(T, 3);
    CHECK(validate_tss(G).ok());
    CHECK(G.count(0) == T.n_objects);
  }
}
