#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "fincat/io.hpp"
#include "fincat/simplexloop.hpp"
#include "helpers.hpp"

using namespace fincat;
using namespace fincat::testing;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("parsing a category file", "[io]") {
  Json j = Json::parse(R"({
    "objects": ["a", "b", "c"],
    "arrows": [{"name": "f", "src": "a", "tgt": "b"},
               {"name": "g", "src": "c", "tgt": "b"}],
    "compose": []
  })");
  FinCategory C = category_from_json(j);
  CHECK(C.n_objects == 3);
  CHECK(C.arrow_count() == 5);
  CHECK(validate(C).ok());
  CHECK(C.arr_name(C.identity(0)) == "id:a");
  CHECK(C.hom(0, 1).size() == 1);
  CHECK(C.comp_at(3, C.identity(0)) == 3);  // f after id:a
}

TEST_CASE("composition entries and the unit laws", "[io]") {
  Json j = Json::parse(R"({
    "objects": ["x", "y", "z"],
    "arrows": [{"name": "f", "src": "x", "tgt": "y"},
               {"name": "g", "src": "y", "tgt": "z"},
               {"name": "h", "src": "x", "tgt": "z"}],
    "compose": [{"g": "g", "f": "f", "gf": "h"}]
  })");
  FinCategory C = category_from_json(j);
  CHECK(validate(C).ok());
  // arrows: id:x=0, id:y=1, id:z=2, f=3, g=4, h=5
  CHECK(C.comp_at(4, 3) == 5);
  CHECK(C.comp_at(3, 0) == 3);
  CHECK(C.comp_at(2, 5) == 5);

  // restating a unit law is tolerated, contradicting it is not
  j["compose"].push_back(Json::parse(R"({"g": "g", "f": "id:y", "gf": "g"})"));
  CHECK(category_from_json(j).comp_at(4, 1) == 4);
  j["compose"].back()["gf"] = "h";
  CHECK_THROWS_MATCHES(category_from_json(j), SchemaError, Catch::Matchers::MessageMatches(
      ContainsSubstring("conflicts")));
}

TEST_CASE("schema violations are reported by name", "[io]") {
  auto parse = [](const char* text) { return category_from_json(Json::parse(text)); };

  CHECK_THROWS_MATCHES(parse(R"({"objects": ["a", "a"]})"), SchemaError,
                       Catch::Matchers::MessageMatches(ContainsSubstring("'a'")));
  CHECK_THROWS_MATCHES(
      parse(R"({"objects": ["a"], "arrows": [{"name": "f", "src": "a", "tgt": "w"}]})"),
      SchemaError, Catch::Matchers::MessageMatches(ContainsSubstring("'w'")));
  CHECK_THROWS_MATCHES(
      parse(R"({"objects": ["a"],
                "arrows": [{"name": "f", "src": "a", "tgt": "a"},
                           {"name": "f", "src": "a", "tgt": "a"}]})"),
      SchemaError, Catch::Matchers::MessageMatches(ContainsSubstring("duplicate arrow name 'f'")));
  // a composable non-identity pair with no listed composite
  CHECK_THROWS_MATCHES(
      parse(R"({"objects": ["a", "b", "c"],
                "arrows": [{"name": "f", "src": "a", "tgt": "b"},
                           {"name": "g", "src": "b", "tgt": "c"}]})"),
      SchemaError, Catch::Matchers::MessageMatches(ContainsSubstring("(g, f)")));
  CHECK_THROWS_MATCHES(
      parse(R"({"objects": ["a", "b"],
                "arrows": [{"name": "f", "src": "a", "tgt": "b"},
                           {"name": "g", "src": "a", "tgt": "b"}],
                "compose": [{"g": "g", "f": "f", "gf": "f"}]})"),
      SchemaError, Catch::Matchers::MessageMatches(ContainsSubstring("not composable")));
}

TEST_CASE("library categories survive the file round trip", "[io]") {
  for (const FinCategory& C :
       {ordinal(2), z2_monoid(), fence3(), span_category(), parallel_pair()}) {
    Json j = category_to_json(C);
    FinCategory P = category_from_json(j);
    CHECK(validate(P).ok());
    CHECK(P.n_objects == C.n_objects);
    CHECK(P.arrow_count() == C.arrow_count());
    CHECK(find_isomorphism(P, C).has_value());

    // serialize . parse is the identity on already-normalized files
    Json j2 = category_to_json(P);
    FinCategory Q = category_from_json(j2);
    CHECK(category_to_json(Q).dump() == j2.dump());
  }
}

TEST_CASE("parsing a hand-written 2-category", "[io]") {
  Json j = Json::parse(R"({
    "objects": ["a", "b"],
    "homs": {
      "a,a": {"objects": ["1a"]},
      "b,b": {"objects": ["1b"]},
      "a,b": {"objects": ["s", "t"],
              "arrows": [{"name": "m", "src": "s", "tgt": "t"}]}
    },
    "identities": {"a": "1a", "b": "1b"},
    "hcompose1": [],
    "hcompose2": []
  })");
  Fin2Category T = two_category_from_json(j);
  CHECK(validate2(T).ok());
  CHECK(T.n_objects == 2);
  CHECK(T.n1(0, 1) == 2);
  CHECK(T.n2(0, 1) == 3);
  CHECK(T.hom(0, 1).arr_name(0) == "id:s");
  // unit laws filled both horizontal composition tables
  CHECK(T.h1(0, 1, 1, T.id1[1], 0) == 0);
  CHECK(T.h2(0, 1, 1, T.id2(1, 1, T.id1[1]), 2) == 2);

  std::string why;
  bool same = homology_equal(homology(geometric_nerve(T, 2), 1),
                             homology(geometric_nerve(walking_two_cell(), 2), 1), 1, &why);
  INFO(why);
  CHECK(same);
}

TEST_CASE("2-categories round-trip through their file form", "[io]") {
  for (const Fin2Category& T : {walking_two_cell(), walking_iso_two_cell(),
                                from_category(fence3()), deloop(monoidal_z2())}) {
    Json j = two_category_to_json(T);
    Fin2Category P = two_category_from_json(j);
    CHECK(validate2(P).ok());
    REQUIRE(P.n_objects == T.n_objects);
    for (ObjId c = 0; c < T.n_objects; ++c)
      for (ObjId d = 0; d < T.n_objects; ++d) {
        CHECK(P.n1(c, d) == T.n1(c, d));
        CHECK(P.n2(c, d) == T.n2(c, d));
      }
    CHECK(homology_equal(homology(geometric_nerve(P, 2), 1),
                         homology(geometric_nerve(T, 2), 1), 1));

    Json j2 = two_category_to_json(P);
    Fin2Category Q = two_category_from_json(j2);
    CHECK(two_category_to_json(Q).dump() == j2.dump());
  }
}

TEST_CASE("2-category schema violations", "[io]") {
  Json j = Json::parse(R"({
    "objects": ["a"],
    "homs": {"a,a": {"objects": ["1a", "e"]}},
    "identities": {},
    "hcompose1": [{"g": "e", "f": "e", "gf": "e"}]
  })");
  CHECK_THROWS_MATCHES(two_category_from_json(j), SchemaError,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("missing identity 1-arrow for object 'a'")));
  j["identities"]["a"] = "1a";
  CHECK(validate2(two_category_from_json(j)).ok());
  // dropping the (e, e) entry leaves a hole the unit laws cannot fill
  j["hcompose1"] = Json::array();
  CHECK_THROWS_MATCHES(two_category_from_json(j), SchemaError,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("hcompose1 is missing the pair (e, e)")));
}

TEST_CASE("monoidal files parse to valid tensor data", "[io]") {
  Json j = Json::parse(R"({
    "objects": ["e", "g"],
    "unit": "e",
    "tensor": [{"x": "e", "y": "e", "xy": "e"}, {"x": "e", "y": "g", "xy": "g"},
               {"x": "g", "y": "e", "xy": "g"}, {"x": "g", "y": "g", "xy": "e"}]
  })");
  MonoidalData D = monoidal_from_json(j);
  CHECK(D.unit == 0);
  CHECK(D.t_obj == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
  CHECK(D.t_arr == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
  CHECK_NOTHROW(from_monoidal(D.M, D.t_obj, D.t_arr, D.unit));

  Json back = monoidal_to_json(D);
  MonoidalData D2 = monoidal_from_json(back);
  CHECK(D2.t_obj == D.t_obj);
  CHECK(D2.t_arr == D.t_arr);
  CHECK(monoidal_to_json(D2).dump() == back.dump());

  j["tensor"].erase(3);
  CHECK_THROWS_MATCHES(monoidal_from_json(j), SchemaError,
                       Catch::Matchers::MessageMatches(ContainsSubstring("(g, g)")));
}

TEST_CASE("map files describe functors", "[io]") {
  std::map<std::string, Json> store;
  store["fence.json"] = Json::parse(R"({
    "objects": ["a", "b", "c"],
    "arrows": [{"name": "f", "src": "a", "tgt": "b"},
               {"name": "g", "src": "c", "tgt": "b"}]
  })");
  store["interval.json"] = Json::parse(R"({
    "objects": ["0", "1"],
    "arrows": [{"name": "r", "src": "0", "tgt": "1"}]
  })");
  auto load = [&](const std::string& name) { return store.at(name); };

  Json j = Json::parse(R"({
    "kind": "functor",
    "source": "fence.json",
    "target": "interval.json",
    "objects": {"a": "0", "b": "1", "c": "0"},
    "arrows": {"f": "r", "g": "r"}
  })");
  MapData D = map_from_json(j, load);
  REQUIRE(D.kind == "functor");
  CHECK(validate_functor(D.functor).ok());

  // inline schemas are accepted wherever a path is
  j["source"] = store["fence.json"];
  j["target"] = store["interval.json"];
  MapData inl = map_from_json(j, load);
  CHECK(same_maps(inl.functor, D.functor));

  j["arrows"].erase("g");
  CHECK_THROWS_MATCHES(map_from_json(j, load), SchemaError,
                       Catch::Matchers::MessageMatches(ContainsSubstring("missing 'g'")));
}

TEST_CASE("map files describe lax functors", "[io]") {
  // The sign-twisted lax functor from the 2-chain into the Z/2 delooping:
  // both steps map to g, the long edge to e, and the comparison cell is the
  // only one available.
  Json target = two_category_to_json(deloop(monoidal_z2()));
  Json j;
  j["kind"] = "lax";
  j["source"] = Json::parse(R"({
    "objects": ["0", "1", "2"],
    "arrows": [{"name": "f01", "src": "0", "tgt": "1"},
               {"name": "f12", "src": "1", "tgt": "2"},
               {"name": "f02", "src": "0", "tgt": "2"}],
    "compose": [{"g": "f12", "f": "f01", "gf": "f02"}]
  })");
  j["target"] = target;
  j["objects"] = Json::parse(R"({"0": "*", "1": "*", "2": "*"})");
  j["arrows"] = Json::parse(R"({"f01": "g", "f12": "g", "f02": "e"})");
  j["structural"] = Json::parse(R"([{"g": "f12", "f": "f01", "cell": "id:e"}])");

  auto no_load = [](const std::string& name) -> Json {
    throw SchemaError("unexpected reference '" + name + "'");
  };
  MapData D = map_from_json(j, no_load);
  REQUIRE(D.kind == "lax");
  CHECK(validate_lax(D.lax).ok());
  CHECK(D.lax.structural.size() == 10);  // every composable pair, normality included

  // a category-shaped target is wrapped as a discrete-hom 2-category
  Json k = Json::parse(R"JSON({
    "kind": "lax",
    "source": {"objects": ["x"], "arrows": [{"name": "s", "src": "x", "tgt": "x"}],
               "compose": [{"g": "s", "f": "s", "gf": "s"}]},
    "target": {"objects": ["y"]},
    "objects": {"x": "y"},
    "arrows": {"s": "id:y"},
    "structural": [{"g": "s", "f": "s", "cell": "id(id:y)"}]
  })JSON");
  MapData E = map_from_json(k, no_load);
  CHECK(validate_lax(E.lax).ok());

  j.erase("structural");
  CHECK_THROWS_MATCHES(map_from_json(j, no_load), SchemaError,
                       Catch::Matchers::MessageMatches(
                           ContainsSubstring("structural cell missing for (f12, f01)")));
}

TEST_CASE("face lists are deterministic and cover every simplex", "[io]") {
  TruncatedSimplicialSet X = nerve(ordinal(2), 2);
  std::string listing = face_list(X);
  CHECK(listing == face_list(nerve(ordinal(2), 2)));

  int lines = 0;
  for (char ch : listing) lines += ch == '\n';
  CHECK(lines == X.count(0) + X.count(1) + X.count(2));
  CHECK_THAT(listing, ContainsSubstring("0 0:"));

  // an inner face that composes to an identity is written degenerate
  CHECK_THAT(face_list(nerve(z2_monoid(), 2)), ContainsSubstring("s0"));
}

TEST_CASE("homology reports round-trip", "[io]") {
  HomologySummary H = homology(nerve(z2_monoid(), 4), 3);
  Json j = homology_report(H, 4);
  CHECK(j["reliable_through"] == 3);
  CHECK(j["coefficients"] == "integers");
  HomologySummary H2 = homology_from_json(j);
  REQUIRE(H2.k_max == H.k_max);
  for (int k = 0; k <= H.k_max; ++k) CHECK(H2.degrees[k] == H.degrees[k]);
  CHECK(homology_report(H2, 4).dump() == j.dump());
}

TEST_CASE("validation reports round-trip", "[io]") {
  FinCategory C = ordinal(1);
  C.set_comp(C.identity(0), C.identity(0), -1);  // break a unit composite
  ValidationReport r = validate(C);
  REQUIRE_FALSE(r.ok());
  Json j = validation_to_json(r);
  CHECK(j["ok"] == false);
  CHECK(validation_to_json(validation_from_json(j)).dump() == j.dump());
}

TEST_CASE("loop, Q, and deloop reports round-trip", "[io]") {
  LoopReport R = loop_consistency(from_category(z2_monoid()), 0, 3, 2);
  Json j = loop_report_to_json(R, 3, 2);
  LoopReport R2 = loop_report_from_json(j);
  CHECK(R2.loop_pi0 == R.loop_pi0);
  CHECK(R2.pi1.order == 2);
  CHECK(R2.q.holds() == R.q.holds());
  CHECK(loop_report_to_json(R2, 3, 2).dump() == j.dump());

  MonoidalInput idem = monoidal_idempotent();
  DeloopReport D = deloop_check(idem.M, idem.t_obj, idem.t_arr, idem.unit);
  Json dj = deloop_report_to_json(D, 3, 2);
  CHECK(dj["group"] == false);
  CHECK(dj["loop"].is_null());
  CHECK(deloop_report_to_json(deloop_report_from_json(dj), 3, 2).dump() == dj.dump());

  MonoidalInput z2 = monoidal_z2();
  DeloopReport G = deloop_check(z2.M, z2.t_obj, z2.t_arr, z2.unit);
  Json gj = deloop_report_to_json(G, 3, 2);
  CHECK(gj["group"] == true);
  REQUIRE_FALSE(gj["loop"].is_null());
  CHECK(deloop_report_to_json(deloop_report_from_json(gj), 3, 2).dump() == gj.dump());
}
