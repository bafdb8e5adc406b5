#ifndef FINCAT_TEST_HELPERS_HPP
#define FINCAT_TEST_HELPERS_HPP

#include <string>
#include <utility>
#include <vector>

#include "fincat/core.hpp"
#include "fincat/twocat.hpp"

namespace fincat::testing {

inline FinCategory z2_monoid() { return monoid_category({{0, 1}, {1, 0}}, 0, {"e", "g"}); }

// a -> b <- c
inline FinCategory fence3() {
  return preorder_category(
      3, [](int i, int j) { return (i == 0 && j == 1) || (i == 2 && j == 1); }, {"a", "b", "c"});
}

// two parallel arrows 0 => 1
inline FinCategory parallel_pair() {
  FinCategory C;
  C.n_objects = 2;
  C.obj_names = {"0", "1"};
  C.arrows = {{0, 0, true}, {1, 1, true}, {0, 1, false}, {0, 1, false}};
  C.arr_names = {"id0", "id1", "a", "b"};
  C.finalize();
  C.set_comp(0, 0, 0);
  C.set_comp(1, 1, 1);
  C.set_comp(2, 0, 2);
  C.set_comp(1, 2, 2);
  C.set_comp(3, 0, 3);
  C.set_comp(1, 3, 3);
  return C;
}

struct MonoidalInput {
  FinCategory M;
  std::vector<std::vector<int>> t_obj;
  std::vector<std::vector<int>> t_arr;
  ObjId unit;
};

/// The group Z/2 as a discrete monoidal category.
inline MonoidalInput monoidal_z2() {
  MonoidalInput in;
  in.M = discrete_category(2);
  in.M.obj_names = {"e", "g"};
  in.t_obj = {{0, 1}, {1, 0}};
  in.t_arr = {{0, 1}, {1, 0}};
  in.unit = 0;
  return in;
}

/// The idempotent monoid {1, a} with a.a = a, as a discrete monoidal category.
inline MonoidalInput monoidal_idempotent() {
  MonoidalInput in;
  in.M = discrete_category(2);
  in.M.obj_names = {"1", "a"};
  in.t_obj = {{0, 1}, {1, 1}};
  in.t_arr = {{0, 1}, {1, 1}};
  in.unit = 0;
  return in;
}

/// The poset {0 < 1} with tensor = max: a monoidal category whose delooping
/// has a single non-identity 2-cell.
inline MonoidalInput monoidal_max_ord1() {
  MonoidalInput in;
  in.M = ordinal(1);
  in.t_obj = {{0, 1}, {1, 1}};
  int A = in.M.arrow_count();
  in.t_arr.assign(A, std::vector<int>(A, -1));
  for (int a = 0; a < A; ++a)
    for (int b = 0; b < A; ++b) {
      int s = std::max(in.M.arrows[a].src, in.M.arrows[b].src);
      int t = std::max(in.M.arrows[a].tgt, in.M.arrows[b].tgt);
      in.t_arr[a][b] = in.M.hom(s, t)[0];
    }
  in.unit = 0;
  return in;
}

inline Fin2Category deloop(const MonoidalInput& in) {
  return from_monoidal(in.M, in.t_obj, in.t_arr, in.unit);
}

/// A named collection of small 2-categories used as a shared test bed.
// k parallel non-identity arrows a -> b
inline FinCategory parallel_arrows(int k) {
  FinCategory C;
  C.n_objects = 2;
  C.obj_names = {"a", "b"};
  C.arrows = {{0, 0, true}, {1, 1, true}};
  C.arr_names = {"id_a", "id_b"};
  for (int i = 0; i < k; ++i) {
    C.arrows.push_back({0, 1, false});
    C.arr_names.push_back("f" + std::to_string(i));
  }
  C.finalize();
  for (ArrId f = 0; f < C.arrow_count(); ++f) {
    C.set_comp(C.identity(C.arrows[f].tgt), f, f);
    C.set_comp(f, C.identity(C.arrows[f].src), f);
  }
  return C;
}

// three graded objects with m01/m02/m12 arrows per level pair; assign fixes
// the composite g_j . f_i as an index into the 0->2 block
inline FinCategory graded_three(int m01, int m02, int m12, const std::vector<int>& assign) {
  FinCategory C;
  C.n_objects = 3;
  C.obj_names = {"a", "b", "c"};
  for (int i = 0; i < 3; ++i) {
    C.arrows.push_back({i, i, true});
    C.arr_names.push_back("id_" + C.obj_names[i]);
  }
  for (int i = 0; i < m01; ++i) {
    C.arrows.push_back({0, 1, false});
    C.arr_names.push_back("f" + std::to_string(i));
  }
  for (int i = 0; i < m02; ++i) {
    C.arrows.push_back({0, 2, false});
    C.arr_names.push_back("h" + std::to_string(i));
  }
  for (int i = 0; i < m12; ++i) {
    C.arrows.push_back({1, 2, false});
    C.arr_names.push_back("g" + std::to_string(i));
  }
  C.finalize();
  for (ArrId f = 0; f < C.arrow_count(); ++f) {
    C.set_comp(C.identity(C.arrows[f].tgt), f, f);
    C.set_comp(f, C.identity(C.arrows[f].src), f);
  }
  int base_f = 3, base_h = 3 + m01, base_g = 3 + m01 + m02;
  for (int j = 0; j < m12; ++j)
    for (int i = 0; i < m01; ++i)
      C.set_comp(base_g + j, base_f + i, base_h + assign[j * m01 + i]);
  return C;
}

/// Every loop-free category with at most 3 objects and at most 5 non-identity
/// arrows, up to relabeling: arrows must run strictly forward along some
/// ordering of the objects, and with three objects the only compositions to
/// choose are the m01*m12 composites through the middle, associativity being
/// vacuous below four objects.
inline std::vector<FinCategory> loop_free_family() {
  std::vector<FinCategory> out;
  out.push_back(ordinal(0));
  for (int k = 0; k <= 5; ++k) out.push_back(parallel_arrows(k));
  for (int m01 = 0; m01 <= 5; ++m01)
    for (int m02 = 0; m01 + m02 <= 5; ++m02)
      for (int m12 = 0; m01 + m02 + m12 <= 5; ++m12) {
        int pairs = m01 * m12;
        if (pairs > 0 && m02 == 0) continue;  // no room for the composites
        int total = 1;
        for (int p = 0; p < pairs; ++p) total *= m02;
        for (int a = 0; a < total; ++a) {
          std::vector<int> assign(pairs);
          for (int p = 0, t = a; p < pairs; ++p, t /= m02) assign[p] = t % m02;
          out.push_back(graded_three(m01, m02, m12, assign));
        }
      }
  return out;
}

inline std::vector<std::pair<std::string, Fin2Category>> two_category_suite() {
  std::vector<std::pair<std::string, Fin2Category>> suite;
  suite.push_back({"point", from_category(ordinal(0))});
  suite.push_back({"interval", from_category(ordinal(1))});
  suite.push_back({"triangle", from_category(ordinal(2))});
  suite.push_back({"tetrahedron", from_category(ordinal(3))});
  suite.push_back({"span", from_category(span_category())});
  suite.push_back({"fence", from_category(fence3())});
  suite.push_back({"z2-group", from_category(z2_monoid())});
  suite.push_back({"parallel-pair", from_category(parallel_pair())});
  suite.push_back({"deloop-z2", deloop(monoidal_z2())});
  suite.push_back({"deloop-idem", deloop(monoidal_idempotent())});
  suite.push_back({"deloop-max", deloop(monoidal_max_ord1())});
  suite.push_back({"walking-2cell", walking_two_cell()});
  suite.push_back({"walking-iso-2cell", walking_iso_two_cell()});
  suite.push_back({"hom-triangle", arrow_two_category(ordinal(2))});
  return suite;
}

}  // namespace fincat::testing

#endif
