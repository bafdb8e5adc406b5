#ifndef FINCAT_TWOCAT_HPP
#define FINCAT_TWOCAT_HPP

#include <map>
#include <tuple>

#include "fincat/core.hpp"

namespace fincat {

/// A strict finite 2-category. Objects are 0..n_objects-1; the hom category
/// between c and c' sits at homs[c*n+c'], its objects are the 1-arrows and
/// its arrows are the 2-cells (both indexed locally to that hom). Horizontal
/// composition is stored as one flat table per object triple.
struct Fin2Category {
  int n_objects = 0;
  std::vector<FinCategory> homs;  // n*n hom categories
  std::vector<int> id1;           // per object: local index of the identity 1-arrow
  // hcomp1_tab[tri(c,c',c'')][g * n1(c,c') + f] for g: c'->c'', f: c->c'
  std::vector<std::vector<int>> hcomp1_tab;
  // hcomp2_tab[tri(c,c',c'')][b * n2(c,c') + a] for 2-cells b, a
  std::vector<std::vector<int>> hcomp2_tab;
  std::vector<std::string> obj_names;

  int pair(ObjId c, ObjId d) const { return c * n_objects + d; }
  int tri(ObjId c, ObjId d, ObjId e) const { return (c * n_objects + d) * n_objects + e; }

  const FinCategory& hom(ObjId c, ObjId d) const { return homs[pair(c, d)]; }
  FinCategory& hom(ObjId c, ObjId d) { return homs[pair(c, d)]; }

  int n1(ObjId c, ObjId d) const { return hom(c, d).n_objects; }
  int n2(ObjId c, ObjId d) const { return hom(c, d).arrow_count(); }

  int h1(ObjId c, ObjId d, ObjId e, int g, int f) const {
    return hcomp1_tab[tri(c, d, e)][(size_t)g * n1(c, d) + f];
  }
  void set_h1(ObjId c, ObjId d, ObjId e, int g, int f, int gf) {
    hcomp1_tab[tri(c, d, e)][(size_t)g * n1(c, d) + f] = gf;
  }
  int h2(ObjId c, ObjId d, ObjId e, int b, int a) const {
    return hcomp2_tab[tri(c, d, e)][(size_t)b * n2(c, d) + a];
  }
  void set_h2(ObjId c, ObjId d, ObjId e, int b, int a, int ba) {
    hcomp2_tab[tri(c, d, e)][(size_t)b * n2(c, d) + a] = ba;
  }

  /// Identity 2-cell on the 1-arrow f of hom(c, d).
  int id2(ObjId c, ObjId d, int f) const { return hom(c, d).identity(f); }

  std::string obj_name(ObjId c) const {
    if (c >= 0 && c < (int)obj_names.size() && !obj_names[c].empty()) return obj_names[c];
    return "#" + std::to_string(c);
  }
  std::string one_name(ObjId c, ObjId d, int f) const { return hom(c, d).obj_name(f); }
  std::string two_name(ObjId c, ObjId d, int a) const { return hom(c, d).arr_name(a); }

  /// Sizes the horizontal composition tables (call after homs are in place).
  void alloc_tables() {
    hcomp1_tab.assign((size_t)n_objects * n_objects * n_objects, {});
    hcomp2_tab.assign((size_t)n_objects * n_objects * n_objects, {});
    for (ObjId c = 0; c < n_objects; ++c)
      for (ObjId d = 0; d < n_objects; ++d)
        for (ObjId e = 0; e < n_objects; ++e) {
          hcomp1_tab[tri(c, d, e)].assign((size_t)n1(d, e) * n1(c, d), -1);
          hcomp2_tab[tri(c, d, e)].assign((size_t)n2(d, e) * n2(c, d), -1);
        }
  }
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

inline ValidationReport validate2(const Fin2Category& T) {
  ValidationReport r;
  const int n = T.n_objects;
  if ((int)T.homs.size() != n * n) {
    r.add("homs-size", "expected " + std::to_string(n * n) + " hom categories");
    return r;
  }
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d)
      r.absorb(validate(T.hom(c, d)), "hom(" + T.obj_name(c) + "," + T.obj_name(d) + "): ");
  if (!r.ok()) return r;
  if ((int)T.id1.size() != n) {
    r.add("id1-size", "identity 1-arrow list has wrong size");
    return r;
  }
  for (ObjId c = 0; c < n; ++c)
    if (T.id1[c] < 0 || T.id1[c] >= T.n1(c, c)) {
      r.add("id1-range", "identity 1-arrow of " + T.obj_name(c) + " out of range");
      return r;
    }
  if ((int)T.hcomp1_tab.size() != n * n * n || (int)T.hcomp2_tab.size() != n * n * n) {
    r.add("tables-size", "horizontal composition tables not allocated");
    return r;
  }

  auto where = [&](ObjId c, ObjId d, ObjId e) {
    return "(" + T.obj_name(c) + "," + T.obj_name(d) + "," + T.obj_name(e) + ")";
  };

  // table shapes, totality, endpoint coherence of 2-cell composition
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d)
      for (ObjId e = 0; e < n; ++e) {
        if ((int)T.hcomp1_tab[T.tri(c, d, e)].size() != T.n1(d, e) * T.n1(c, d) ||
            (int)T.hcomp2_tab[T.tri(c, d, e)].size() != T.n2(d, e) * T.n2(c, d)) {
          r.add("table-shape", "table at " + where(c, d, e) + " has wrong size");
          return r;
        }
        for (int g = 0; g < T.n1(d, e); ++g)
          for (int f = 0; f < T.n1(c, d); ++f) {
            int gf = T.h1(c, d, e, g, f);
            if (gf < 0 || gf >= T.n1(c, e))
              r.add("hcomp1-range", "1-arrow composite missing at " + where(c, d, e));
          }
        const FinCategory& H1 = T.hom(c, d);
        const FinCategory& H2 = T.hom(d, e);
        const FinCategory& H3 = T.hom(c, e);
        for (int b = 0; b < T.n2(d, e); ++b)
          for (int a = 0; a < T.n2(c, d); ++a) {
            int ba = T.h2(c, d, e, b, a);
            if (ba < 0 || ba >= T.n2(c, e)) {
              r.add("hcomp2-range", "2-cell composite missing at " + where(c, d, e));
              continue;
            }
            if (H3.arrows[ba].src != T.h1(c, d, e, H2.arrows[b].src, H1.arrows[a].src) ||
                H3.arrows[ba].tgt != T.h1(c, d, e, H2.arrows[b].tgt, H1.arrows[a].tgt))
              r.add("hcomp2-endpoints", "2-cell composite at " + where(c, d, e) +
                                            " is not parallel to the composite of its boundaries");
          }
      }
  if (!r.ok()) return r;

  // units: id1 is strict on both sides, for 1-arrows and 2-cells
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d) {
      for (int f = 0; f < T.n1(c, d); ++f) {
        if (T.h1(c, d, d, T.id1[d], f) != f)
          r.add("unit-1", "id . " + T.one_name(c, d, f) + " != " + T.one_name(c, d, f));
        if (T.h1(c, c, d, f, T.id1[c]) != f)
          r.add("unit-1", T.one_name(c, d, f) + " . id != " + T.one_name(c, d, f));
      }
      for (int a = 0; a < T.n2(c, d); ++a) {
        if (T.h2(c, d, d, T.id2(d, d, T.id1[d]), a) != a)
          r.add("unit-2", "whiskering " + T.two_name(c, d, a) + " by the identity changes it");
        if (T.h2(c, c, d, a, T.id2(c, c, T.id1[c])) != a)
          r.add("unit-2", "whiskering " + T.two_name(c, d, a) + " by the identity changes it");
      }
    }

  // associativity for 1-arrows and 2-cells
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d)
      for (ObjId e = 0; e < n; ++e)
        for (ObjId x = 0; x < n; ++x) {
          for (int h = 0; h < T.n1(e, x); ++h)
            for (int g = 0; g < T.n1(d, e); ++g)
              for (int f = 0; f < T.n1(c, d); ++f)
                if (T.h1(c, d, x, T.h1(d, e, x, h, g), f) !=
                    T.h1(c, e, x, h, T.h1(c, d, e, g, f)))
                  r.add("assoc-1", "1-arrow associativity fails at " + where(c, d, e));
          for (int cc = 0; cc < T.n2(e, x); ++cc)
            for (int b = 0; b < T.n2(d, e); ++b)
              for (int a = 0; a < T.n2(c, d); ++a)
                if (T.h2(c, d, x, T.h2(d, e, x, cc, b), a) !=
                    T.h2(c, e, x, cc, T.h2(c, d, e, b, a)))
                  r.add("assoc-2", "2-cell associativity fails at " + where(c, d, e));
        }

  // functoriality of horizontal composition: identities and interchange
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d)
      for (ObjId e = 0; e < n; ++e) {
        const FinCategory& H1 = T.hom(c, d);
        const FinCategory& H2 = T.hom(d, e);
        const FinCategory& H3 = T.hom(c, e);
        for (int g = 0; g < T.n1(d, e); ++g)
          for (int f = 0; f < T.n1(c, d); ++f)
            if (T.h2(c, d, e, H2.identity(g), H1.identity(f)) !=
                H3.identity(T.h1(c, d, e, g, f)))
              r.add("hcomp-id", "horizontal composite of identity 2-cells is not an identity at " +
                                    where(c, d, e));
        for (int b2 = 0; b2 < T.n2(d, e); ++b2)
          for (int b1 = 0; b1 < T.n2(d, e); ++b1) {
            if (!H2.composable(b2, b1)) continue;
            for (int a2 = 0; a2 < T.n2(c, d); ++a2)
              for (int a1 = 0; a1 < T.n2(c, d); ++a1) {
                if (!H1.composable(a2, a1)) continue;
                if (T.h2(c, d, e, H2.comp_at(b2, b1), H1.comp_at(a2, a1)) !=
                    H3.comp_at(T.h2(c, d, e, b2, a2), T.h2(c, d, e, b1, a1)))
                  r.add("interchange", "interchange fails at " + where(c, d, e));
              }
          }
      }
  return r;
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// A category viewed as a 2-category with only identity 2-cells. The hom
/// category at (c, d) lists the arrows c -> d in ascending order.
inline Fin2Category from_category(const FinCategory& C) {
  Fin2Category T;
  T.n_objects = C.n_objects;
  T.obj_names.resize(C.n_objects);
  for (ObjId c = 0; c < C.n_objects; ++c) T.obj_names[c] = C.obj_name(c);
  const int n = C.n_objects;
  std::vector<std::vector<ArrId>> globals(n * n);
  std::vector<int> local_of(C.arrow_count(), -1);
  T.homs.resize(n * n);
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d) {
      auto& gl = globals[T.pair(c, d)];
      gl = C.hom(c, d);
      for (size_t i = 0; i < gl.size(); ++i) local_of[gl[i]] = (int)i;
      FinCategory H;
      H.n_objects = (int)gl.size();
      for (size_t i = 0; i < gl.size(); ++i) {
        H.arrows.push_back({(int)i, (int)i, true});
        H.obj_names.push_back(C.arr_name(gl[i]));
        H.arr_names.push_back("id(" + C.arr_name(gl[i]) + ")");
      }
      H.finalize();
      for (int i = 0; i < H.n_objects; ++i) H.set_comp(i, i, i);
      T.homs[T.pair(c, d)] = H;
    }
  T.id1.resize(n);
  for (ObjId c = 0; c < n; ++c) T.id1[c] = local_of[C.identity(c)];
  T.alloc_tables();
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d)
      for (ObjId e = 0; e < n; ++e)
        for (int g = 0; g < T.n1(d, e); ++g)
          for (int f = 0; f < T.n1(c, d); ++f) {
            int gf = local_of[C.comp_at(globals[T.pair(d, e)][g], globals[T.pair(c, d)][f])];
            T.set_h1(c, d, e, g, f, gf);
            T.set_h2(c, d, e, g, f, gf);  // in a discrete hom, cell i is the identity of arrow i
          }
  return T;
}

/// Checks that (tensor on objects, tensor on arrows, unit) makes M a strict
/// monoidal category: associativity and unit laws on both levels,
/// bifunctoriality, and preservation of identities.
inline ValidationReport validate_strict_monoidal(const FinCategory& M,
                                                 const std::vector<std::vector<int>>& t_obj,
                                                 const std::vector<std::vector<int>>& t_arr,
                                                 ObjId unit) {
  ValidationReport r;
  const int N = M.n_objects, A = M.arrow_count();
  if ((int)t_obj.size() != N || (int)t_arr.size() != A) {
    r.add("tensor-size", "tensor tables do not match the category");
    return r;
  }
  for (int x = 0; x < N; ++x)
    if ((int)t_obj[x].size() != N) {
      r.add("tensor-size", "object tensor row has wrong length");
      return r;
    }
  for (int f = 0; f < A; ++f)
    if ((int)t_arr[f].size() != A) {
      r.add("tensor-size", "arrow tensor row has wrong length");
      return r;
    }
  for (int x = 0; x < N; ++x) {
    if (t_obj[unit][x] != x || t_obj[x][unit] != x)
      r.add("unit-obj", "unit law fails on object " + M.obj_name(x));
    for (int y = 0; y < N; ++y)
      for (int z = 0; z < N; ++z)
        if (t_obj[t_obj[x][y]][z] != t_obj[x][t_obj[y][z]])
          r.add("assoc-obj", "object tensor is not associative");
  }
  ArrId idu = M.identity(unit);
  for (int f = 0; f < A; ++f) {
    int l = t_arr[idu][f], p = t_arr[f][idu];
    if (l != f || p != f) r.add("unit-arr", "unit law fails on arrow " + M.arr_name(f));
    const Arrow& af = M.arrows[f];
    for (int g = 0; g < A; ++g) {
      const Arrow& ag = M.arrows[g];
      int fg = t_arr[f][g];
      if (fg < 0 || fg >= A) {
        r.add("tensor-range", "arrow tensor out of range");
        return r;
      }
      if (M.arrows[fg].src != t_obj[af.src][ag.src] || M.arrows[fg].tgt != t_obj[af.tgt][ag.tgt])
        r.add("tensor-endpoints",
              M.arr_name(f) + " (x) " + M.arr_name(g) + " has wrong endpoints");
      for (int h = 0; h < A; ++h)
        if (t_arr[t_arr[f][g]][h] != t_arr[f][t_arr[g][h]])
          r.add("assoc-arr", "arrow tensor is not associative");
    }
  }
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      if (t_arr[M.identity(x)][M.identity(y)] != M.identity(t_obj[x][y]))
        r.add("tensor-id", "tensor of identities is not an identity");
  for (int f2 = 0; f2 < A; ++f2)
    for (int f1 = 0; f1 < A; ++f1) {
      if (!M.composable(f2, f1)) continue;
      for (int g2 = 0; g2 < A; ++g2)
        for (int g1 = 0; g1 < A; ++g1) {
          if (!M.composable(g2, g1)) continue;
          if (t_arr[M.comp_at(f2, f1)][M.comp_at(g2, g1)] !=
              M.comp_at(t_arr[f2][g2], t_arr[f1][g1]))
            r.add("bifunctor", "tensor does not commute with composition");
        }
    }
  return r;
}

/// Delooping of a strict monoidal category: one object whose endo-hom is M,
/// with horizontal composition given by the tensor.
inline Fin2Category from_monoidal(const FinCategory& M, const std::vector<std::vector<int>>& t_obj,
                                  const std::vector<std::vector<int>>& t_arr, ObjId unit) {
  ValidationReport r = validate_strict_monoidal(M, t_obj, t_arr, unit);
  if (!r.ok()) throw PreconditionError("from_monoidal: not strict monoidal\n" + r.to_string());
  Fin2Category T;
  T.n_objects = 1;
  T.obj_names = {"*"};
  T.homs = {M};
  T.id1 = {unit};
  T.alloc_tables();
  for (int g = 0; g < M.n_objects; ++g)
    for (int f = 0; f < M.n_objects; ++f) T.set_h1(0, 0, 0, g, f, t_obj[g][f]);
  for (int b = 0; b < M.arrow_count(); ++b)
    for (int a = 0; a < M.arrow_count(); ++a) T.set_h2(0, 0, 0, b, a, t_arr[b][a]);
  return T;
}

/// Reverses 1-arrows (hom(c,d) becomes hom(d,c)); 2-cells keep their
/// direction. An involution.
inline Fin2Category op2(const Fin2Category& T) {
  Fin2Category R;
  R.n_objects = T.n_objects;
  R.obj_names = T.obj_names;
  R.id1 = T.id1;
  const int n = T.n_objects;
  R.homs.resize(n * n);
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d) R.homs[R.pair(c, d)] = T.hom(d, c);
  R.alloc_tables();
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d)
      for (ObjId e = 0; e < n; ++e) {
        for (int g = 0; g < R.n1(d, e); ++g)
          for (int f = 0; f < R.n1(c, d); ++f)
            R.set_h1(c, d, e, g, f, T.h1(e, d, c, f, g));
        for (int b = 0; b < R.n2(d, e); ++b)
          for (int a = 0; a < R.n2(c, d); ++a)
            R.set_h2(c, d, e, b, a, T.h2(e, d, c, a, b));
      }
  return R;
}

/// Reverses 2-cells (each hom category is replaced by its opposite);
/// 1-arrows keep their direction. An involution.
inline Fin2Category transpose2(const Fin2Category& T) {
  Fin2Category R = T;
  for (auto& H : R.homs) H = opposite(H);
  // a 2-cell composite b . a lands between the same pair of 1-arrow
  // composites, just read in the other direction, so the tables carry over
  return R;
}

/// Reverses both 1-arrows and 2-cells: op2 followed by transpose2 (the
/// two commute). An involution.
inline Fin2Category op_prime(const Fin2Category& T) { return transpose2(op2(T)); }

/// Component index of every object in the undirected 1-arrow graph.
inline std::vector<int> object_components2(const Fin2Category& T) {
  FinCategory skel;
  skel.n_objects = T.n_objects;
  for (ObjId c = 0; c < T.n_objects; ++c)
    for (ObjId d = 0; d < T.n_objects; ++d)
      if (c != d && T.n1(c, d) > 0) skel.arrows.push_back({c, d, false});
  return object_components(skel);
}

/// Whether any two objects are linked by a chain of 1-arrows, in either
/// direction. Vacuously true for the empty 2-category.
inline bool two_cat_connected(const Fin2Category& T) {
  auto comp = object_components2(T);
  return comp.empty() || *std::max_element(comp.begin(), comp.end()) == 0;
}

/// Structural equality, ignoring names.
inline bool two_cat_equal(const Fin2Category& A, const Fin2Category& B) {
  if (A.n_objects != B.n_objects || A.id1 != B.id1) return false;
  if (A.hcomp1_tab != B.hcomp1_tab || A.hcomp2_tab != B.hcomp2_tab) return false;
  if (A.homs.size() != B.homs.size()) return false;
  for (size_t i = 0; i < A.homs.size(); ++i) {
    const FinCategory &X = A.homs[i], &Y = B.homs[i];
    if (X.n_objects != Y.n_objects || X.comp != Y.comp) return false;
    if (X.arrows.size() != Y.arrows.size()) return false;
    for (size_t f = 0; f < X.arrows.size(); ++f)
      if (X.arrows[f].src != Y.arrows[f].src || X.arrows[f].tgt != Y.arrows[f].tgt ||
          X.arrows[f].is_identity != Y.arrows[f].is_identity)
        return false;
  }
  return true;
}

/// Two objects a, b with trivial endo-homs, hom(a,b) = H, hom(b,a) empty.
/// Horizontal composition is forced by the unit laws.
inline Fin2Category arrow_two_category(const FinCategory& H, const std::string& name_a = "a",
                                       const std::string& name_b = "b") {
  Fin2Category T;
  T.n_objects = 2;
  T.obj_names = {name_a, name_b};
  FinCategory pt = ordinal(0);
  pt.obj_names = {"id"};
  FinCategory empty;
  empty.finalize();
  T.homs = {pt, H, empty, pt};
  T.id1 = {0, 0};
  T.alloc_tables();
  T.set_h1(0, 0, 0, 0, 0, 0);
  T.set_h2(0, 0, 0, 0, 0, 0);
  T.set_h1(1, 1, 1, 0, 0, 0);
  T.set_h2(1, 1, 1, 0, 0, 0);
  for (int f = 0; f < H.n_objects; ++f) {
    T.set_h1(0, 0, 1, f, 0, f);
    T.set_h1(0, 1, 1, 0, f, f);
  }
  for (int a = 0; a < H.arrow_count(); ++a) {
    T.set_h2(0, 0, 1, a, 0, a);
    T.set_h2(0, 1, 1, 0, a, a);
  }
  return T;
}

/// The 2-category freely generated by one 2-cell between parallel 1-arrows.
inline Fin2Category walking_two_cell() {
  FinCategory H = ordinal(1);
  H.obj_names = {"s", "t"};
  H.arr_names = {"id(s)", "id(t)", "m"};
  return arrow_two_category(H);
}

/// Like walking_two_cell but the 2-cell is invertible.
inline Fin2Category walking_iso_two_cell() {
  FinCategory H;
  H.n_objects = 2;
  H.obj_names = {"s", "t"};
  H.arrows = {{0, 0, true}, {1, 1, true}, {0, 1, false}, {1, 0, false}};
  H.arr_names = {"id(s)", "id(t)", "m", "w"};
  H.finalize();
  H.set_comp(0, 0, 0);
  H.set_comp(1, 1, 1);
  H.set_comp(2, 0, 2);
  H.set_comp(1, 2, 2);
  H.set_comp(3, 1, 3);
  H.set_comp(0, 3, 3);
  H.set_comp(3, 2, 0);
  H.set_comp(2, 3, 1);
  return arrow_two_category(H);
}

// ---------------------------------------------------------------------------
// Strict 2-functors
// ---------------------------------------------------------------------------

struct TwoFunctor {
  Fin2Category source;
  Fin2Category target;
  std::vector<ObjId> obj_map;
  std::vector<std::vector<int>> one_maps;  // [pair]: local 1-arrow -> local 1-arrow
  std::vector<std::vector<int>> two_maps;  // [pair]: local 2-cell -> local 2-cell
};

/// The action of F on the hom category at (c, d), as an ordinary functor.
inline CatFunctor hom_functor(const TwoFunctor& F, ObjId c, ObjId d) {
  return CatFunctor{F.source.hom(c, d),
                    F.target.hom(F.obj_map[c], F.obj_map[d]),
                    F.one_maps[F.source.pair(c, d)],
                    F.two_maps[F.source.pair(c, d)]};
}

inline ValidationReport validate_two_functor(const TwoFunctor& F) {
  ValidationReport r;
  const Fin2Category& C = F.source;
  const Fin2Category& D = F.target;
  const int n = C.n_objects;
  if ((int)F.obj_map.size() != n || (int)F.one_maps.size() != n * n ||
      (int)F.two_maps.size() != n * n) {
    r.add("2functor-size", "component maps have wrong sizes");
    return r;
  }
  for (ObjId c = 0; c < n; ++c)
    if (F.obj_map[c] < 0 || F.obj_map[c] >= D.n_objects) {
      r.add("2functor-range", "object image out of range");
      return r;
    }
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d)
      r.absorb(validate_functor(hom_functor(F, c, d)),
               "hom(" + C.obj_name(c) + "," + C.obj_name(d) + "): ");
  if (!r.ok()) return r;
  for (ObjId c = 0; c < n; ++c)
    if (F.one_maps[C.pair(c, c)][C.id1[c]] != D.id1[F.obj_map[c]])
      r.add("2functor-id1", "identity 1-arrow of " + C.obj_name(c) + " not preserved");
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d)
      for (ObjId e = 0; e < n; ++e) {
        ObjId fc = F.obj_map[c], fd = F.obj_map[d], fe = F.obj_map[e];
        for (int g = 0; g < C.n1(d, e); ++g)
          for (int f = 0; f < C.n1(c, d); ++f)
            if (F.one_maps[C.pair(c, e)][C.h1(c, d, e, g, f)] !=
                D.h1(fc, fd, fe, F.one_maps[C.pair(d, e)][g], F.one_maps[C.pair(c, d)][f]))
              r.add("2functor-hcomp1", "1-arrow composition not preserved at (" + C.obj_name(c) +
                                           "," + C.obj_name(d) + "," + C.obj_name(e) + ")");
        for (int b = 0; b < C.n2(d, e); ++b)
          for (int a = 0; a < C.n2(c, d); ++a)
            if (F.two_maps[C.pair(c, e)][C.h2(c, d, e, b, a)] !=
                D.h2(fc, fd, fe, F.two_maps[C.pair(d, e)][b], F.two_maps[C.pair(c, d)][a]))
              r.add("2functor-hcomp2", "2-cell composition not preserved at (" + C.obj_name(c) +
                                           "," + C.obj_name(d) + "," + C.obj_name(e) + ")");
      }
  return r;
}

namespace detail {

/// Functor arrow maps from src to tgt extending a fixed object map,
/// enumerated by backtracking over non-identity arrows.
inline std::vector<std::vector<ArrId>> arrow_maps_over(const FinCategory& src,
                                                       const FinCategory& tgt,
                                                       const std::vector<ObjId>& obj_map,
                                                       long long& nodes, long long budget) {
  std::vector<std::vector<ArrId>> out;
  std::vector<int> nonid;
  for (int f = 0; f < src.arrow_count(); ++f)
    if (!src.arrows[f].is_identity) nonid.push_back(f);
  std::vector<ArrId> am(src.arrow_count(), -1);
  for (ObjId c = 0; c < src.n_objects; ++c) am[src.identity(c)] = tgt.identity(obj_map[c]);
  std::function<void(size_t)> place = [&](size_t k) {
    if (k == nonid.size()) {
      for (int g = 0; g < src.arrow_count(); ++g)
        for (int f = 0; f < src.arrow_count(); ++f)
          if (src.composable(g, f) && am[src.comp_at(g, f)] != tgt.comp_at(am[g], am[f])) return;
      out.push_back(am);
      return;
    }
    int f = nonid[k];
    for (ArrId g = 0; g < tgt.arrow_count(); ++g) {
      if (tgt.arrows[g].src != obj_map[src.arrows[f].src] ||
          tgt.arrows[g].tgt != obj_map[src.arrows[f].tgt])
        continue;
      if (++nodes > budget) throw BudgetExceeded("arrow_maps_over: search too large", nodes);
      am[f] = g;
      bool fine = true;
      for (int h = 0; fine && h < src.arrow_count(); ++h) {
        if (am[h] < 0) continue;
        if (src.composable(f, h) && am[src.comp_at(f, h)] >= 0 &&
            am[src.comp_at(f, h)] != tgt.comp_at(am[f], am[h]))
          fine = false;
        if (src.composable(h, f) && am[src.comp_at(h, f)] >= 0 &&
            am[src.comp_at(h, f)] != tgt.comp_at(am[h], am[f]))
          fine = false;
      }
      if (fine) place(k + 1);
      am[f] = -1;
    }
  };
  place(0);
  return out;
}

}  // namespace detail

/// All strict 2-functors C -> D, deterministically ordered. Searches object
/// maps, then 1-arrow images (respecting identities and horizontal
/// composition), then per-hom 2-cell maps (respecting vertical structure),
/// finally filtering by preservation of horizontal 2-cell composition.
inline std::vector<TwoFunctor> enumerate_two_functors(const Fin2Category& C, const Fin2Category& D,
                                                      long long budget = 5000000) {
  std::vector<TwoFunctor> out;
  const int n = C.n_objects;
  if (n == 0) {
    out.push_back(TwoFunctor{C, D, {}, {}, {}});
    return out;
  }
  if (D.n_objects == 0) return out;
  long long nodes = 0;

  std::vector<ObjId> om(n, 0);
  // global list of (pair, local obj) slots for the 1-arrow assignment
  struct Slot {
    ObjId c, d;
    int f;
  };
  std::vector<Slot> slots;
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d)
      for (int f = 0; f < C.n1(c, d); ++f)
        if (!(c == d && f == C.id1[c])) slots.push_back({c, d, f});

  std::vector<std::vector<int>> ones(n * n);

  auto check_partial_h1 = [&]() {
    for (ObjId c = 0; c < n; ++c)
      for (ObjId d = 0; d < n; ++d)
        for (ObjId e = 0; e < n; ++e)
          for (int g = 0; g < C.n1(d, e); ++g) {
            if (ones[C.pair(d, e)][g] < 0) continue;
            for (int f = 0; f < C.n1(c, d); ++f) {
              if (ones[C.pair(c, d)][f] < 0) continue;
              int gf = C.h1(c, d, e, g, f);
              int img = ones[C.pair(c, e)][gf];
              if (img >= 0 && img != D.h1(om[c], om[d], om[e], ones[C.pair(d, e)][g],
                                          ones[C.pair(c, d)][f]))
                return false;
            }
          }
    return true;
  };

  std::function<void(size_t)> place_ones = [&](size_t k) {
    if (k == slots.size()) {
      // per-hom 2-cell maps over the fixed 1-arrow images
      std::vector<std::vector<std::vector<ArrId>>> choices(n * n);
      for (ObjId c = 0; c < n; ++c)
        for (ObjId d = 0; d < n; ++d) {
          choices[C.pair(c, d)] = detail::arrow_maps_over(
              C.hom(c, d), D.hom(om[c], om[d]), ones[C.pair(c, d)], nodes, budget);
          if (choices[C.pair(c, d)].empty()) return;
        }
      std::vector<std::vector<int>> twos(n * n);
      std::function<void(int)> pick = [&](int p) {
        if (p == n * n) {
          for (ObjId c = 0; c < n; ++c)
            for (ObjId d = 0; d < n; ++d)
              for (ObjId e = 0; e < n; ++e)
                for (int b = 0; b < C.n2(d, e); ++b)
                  for (int a = 0; a < C.n2(c, d); ++a)
                    if (twos[C.pair(c, e)][C.h2(c, d, e, b, a)] !=
                        D.h2(om[c], om[d], om[e], twos[C.pair(d, e)][b], twos[C.pair(c, d)][a]))
                      return;
          out.push_back(TwoFunctor{C, D, om, ones, twos});
          return;
        }
        for (const auto& tm : choices[p]) {
          if (++nodes > budget)
            throw BudgetExceeded("enumerate_two_functors: search too large", nodes);
          twos[p] = tm;
          pick(p + 1);
        }
      };
      pick(0);
      return;
    }
    const Slot& s = slots[k];
    for (int img = 0; img < D.n1(om[s.c], om[s.d]); ++img) {
      if (++nodes > budget) throw BudgetExceeded("enumerate_two_functors: search too large", nodes);
      ones[C.pair(s.c, s.d)][s.f] = img;
      if (check_partial_h1()) place_ones(k + 1);
      ones[C.pair(s.c, s.d)][s.f] = -1;
    }
  };

  bool more = true;
  while (more) {
    for (ObjId c = 0; c < n; ++c)
      for (ObjId d = 0; d < n; ++d) ones[C.pair(c, d)].assign(C.n1(c, d), -1);
    bool feasible = true;
    for (ObjId c = 0; c < n; ++c) {
      ones[C.pair(c, c)][C.id1[c]] = D.id1[om[c]];
      for (ObjId d = 0; d < n; ++d)
        if (C.n1(c, d) > 0 && D.n1(om[c], om[d]) == 0) feasible = false;
    }
    if (feasible) place_ones(0);
    int i = n - 1;
    while (i >= 0 && om[i] == D.n_objects - 1) om[i--] = 0;
    if (i < 0)
      more = false;
    else
      ++om[i];
  }
  return out;
}

inline bool same_two_functor(const TwoFunctor& F, const TwoFunctor& G) {
  return F.obj_map == G.obj_map && F.one_maps == G.one_maps && F.two_maps == G.two_maps;
}

inline TwoFunctor identity_two_functor(const Fin2Category& T) {
  TwoFunctor F{T, T, {}, {}, {}};
  F.obj_map.resize(T.n_objects);
  for (ObjId c = 0; c < T.n_objects; ++c) F.obj_map[c] = c;
  F.one_maps.resize((size_t)T.n_objects * T.n_objects);
  F.two_maps.resize((size_t)T.n_objects * T.n_objects);
  for (ObjId c = 0; c < T.n_objects; ++c)
    for (ObjId d = 0; d < T.n_objects; ++d) {
      auto& om = F.one_maps[T.pair(c, d)];
      auto& tm = F.two_maps[T.pair(c, d)];
      om.resize(T.n1(c, d));
      tm.resize(T.n2(c, d));
      for (int f = 0; f < T.n1(c, d); ++f) om[f] = f;
      for (int a = 0; a < T.n2(c, d); ++a) tm[a] = a;
    }
  return F;
}

// ---------------------------------------------------------------------------
// Normal lax functors out of a category
// ---------------------------------------------------------------------------

/// A normal lax functor from an ordinary category C into a 2-category D.
/// Only composition is relaxed: each composable pair (g, f) of C carries a
/// structural 2-cell u(gf) => u(g) . u(f), pinned to the identity whenever
/// g or f is an identity (normality).
struct LaxFromCat {
  FinCategory source;
  Fin2Category target;
  std::vector<ObjId> obj_map;
  std::vector<int> one_map;  // per source arrow: local 1-arrow in hom(F src, F tgt)
  std::map<std::pair<ArrId, ArrId>, int> structural;  // (g, f) -> 2-cell index
};

inline int lax_structural(const LaxFromCat& u, ArrId g, ArrId f) {
  auto it = u.structural.find({g, f});
  if (it == u.structural.end())
    throw PreconditionError("lax functor: missing structural cell");
  return it->second;
}

inline ValidationReport validate_lax(const LaxFromCat& u) {
  ValidationReport r;
  const FinCategory& C = u.source;
  const Fin2Category& D = u.target;
  if ((int)u.obj_map.size() != C.n_objects || (int)u.one_map.size() != C.arrow_count()) {
    r.add("lax-size", "component maps have wrong sizes");
    return r;
  }
  for (int f = 0; f < C.arrow_count(); ++f) {
    ObjId uc = u.obj_map[C.arrows[f].src], ud = u.obj_map[C.arrows[f].tgt];
    if (u.one_map[f] < 0 || u.one_map[f] >= D.n1(uc, ud)) {
      r.add("lax-range", "image of " + C.arr_name(f) + " out of range");
      return r;
    }
  }
  for (ObjId c = 0; c < C.n_objects; ++c)
    if (u.one_map[C.identity(c)] != D.id1[u.obj_map[c]])
      r.add("lax-normal", "identity of " + C.obj_name(c) + " not sent to the identity 1-arrow");
  std::vector<std::vector<int>> by_tgt(C.n_objects);
  for (int f = 0; f < C.arrow_count(); ++f) by_tgt[C.arrows[f].tgt].push_back(f);
  for (int g = 0; g < C.arrow_count(); ++g)
    for (int f : by_tgt[C.arrows[g].src]) {
      auto it = u.structural.find({g, f});
      if (it == u.structural.end()) {
        r.add("lax-structural-missing",
              "no structural cell for (" + C.arr_name(g) + ", " + C.arr_name(f) + ")");
        continue;
      }
      ObjId a = u.obj_map[C.arrows[f].src];
      ObjId b = u.obj_map[C.arrows[f].tgt];
      ObjId c = u.obj_map[C.arrows[g].tgt];
      const FinCategory& H = D.hom(a, c);
      int cell = it->second;
      if (cell < 0 || cell >= H.arrow_count()) {
        r.add("lax-structural-range", "structural cell out of range");
        continue;
      }
      int lhs = u.one_map[C.comp_at(g, f)];
      int rhs = D.h1(a, b, c, u.one_map[g], u.one_map[f]);
      if (H.arrows[cell].src != lhs || H.arrows[cell].tgt != rhs)
        r.add("lax-structural-endpoints", "structural cell for (" + C.arr_name(g) + ", " +
                                              C.arr_name(f) + ") is not u(gf) => u(g).u(f)");
      if ((C.arrows[g].is_identity || C.arrows[f].is_identity) && cell != H.identity(lhs))
        r.add("lax-normal", "structural cell with an identity factor is not the identity");
    }
  if (!r.ok()) return r;
  // cocycle: composing the structural cells in the two possible orders agrees.
  // The sweep is cubic in the arrow count, so read the structural table
  // through a flat copy instead of four tree lookups per triple.
  const size_t A = (size_t)C.arrow_count();
  std::vector<int> stab(A * A, -1);
  for (const auto& [pair, cell] : u.structural) stab[(size_t)pair.first * A + pair.second] = cell;
  auto cell_of = [&](int g, int f) { return stab[(size_t)g * A + f]; };
  for (int h = 0; h < C.arrow_count(); ++h)
    for (int g : by_tgt[C.arrows[h].src]) {
      for (int f : by_tgt[C.arrows[g].src]) {
        ObjId a = u.obj_map[C.arrows[f].src];
        ObjId b = u.obj_map[C.arrows[f].tgt];
        ObjId c = u.obj_map[C.arrows[g].tgt];
        ObjId d = u.obj_map[C.arrows[h].tgt];
        const FinCategory& H = D.hom(a, d);
        int left = H.comp_at(
            D.h2(a, b, d, cell_of(h, g), D.id2(a, b, u.one_map[f])),
            cell_of(C.comp_at(h, g), f));
        int right = H.comp_at(
            D.h2(a, c, d, D.id2(c, d, u.one_map[h]), cell_of(g, f)),
            cell_of(h, C.comp_at(g, f)));
        if (left != right)
          r.add("lax-cocycle", "coherence fails on (" + C.arr_name(h) + ", " + C.arr_name(g) +
                                   ", " + C.arr_name(f) + ")");
      }
    }
  return r;
}

/// All normal lax functors C -> D. Free choices are the images of
/// non-identity arrows and the structural cells of pairs without an identity
/// factor; the cocycle condition filters candidates.
inline std::vector<LaxFromCat> enumerate_lax_functors(const FinCategory& C, const Fin2Category& D,
                                                      long long budget = 5000000) {
  std::vector<LaxFromCat> out;
  if (C.n_objects == 0) {
    out.push_back(LaxFromCat{C, D, {}, {}, {}});
    return out;
  }
  if (D.n_objects == 0) return out;
  long long nodes = 0;
  std::vector<int> nonid;
  for (int f = 0; f < C.arrow_count(); ++f)
    if (!C.arrows[f].is_identity) nonid.push_back(f);
  std::vector<std::pair<ArrId, ArrId>> free_pairs, all_pairs;
  for (int g = 0; g < C.arrow_count(); ++g)
    for (int f = 0; f < C.arrow_count(); ++f)
      if (C.composable(g, f)) {
        all_pairs.push_back({g, f});
        if (!C.arrows[g].is_identity && !C.arrows[f].is_identity) free_pairs.push_back({g, f});
      }

  std::vector<ObjId> om(C.n_objects, 0);
  std::vector<int> am(C.arrow_count(), -1);
  std::map<std::pair<ArrId, ArrId>, int> st;

  auto cell_src = [&](ArrId g, ArrId f) {  // endpoints of the structural slot
    ObjId a = om[C.arrows[f].src], b = om[C.arrows[f].tgt], c = om[C.arrows[g].tgt];
    int lhs = am[C.comp_at(g, f)];
    int rhs = D.h1(a, b, c, am[g], am[f]);
    return std::tuple<ObjId, ObjId, int, int>{a, c, lhs, rhs};
  };

  std::function<void(size_t)> place_st = [&](size_t k) {
    if (k == free_pairs.size()) {
      // cocycle filter over all composable triples
      for (int h = 0; h < C.arrow_count(); ++h)
        for (int g = 0; g < C.arrow_count(); ++g) {
          if (!C.composable(h, g)) continue;
          for (int f = 0; f < C.arrow_count(); ++f) {
            if (!C.composable(g, f)) continue;
            ObjId a = om[C.arrows[f].src], b = om[C.arrows[f].tgt];
            ObjId c = om[C.arrows[g].tgt], d = om[C.arrows[h].tgt];
            const FinCategory& H = D.hom(a, d);
            int left = H.comp_at(D.h2(a, b, d, st.at({h, g}), D.id2(a, b, am[f])),
                                 st.at({C.comp_at(h, g), f}));
            int right = H.comp_at(D.h2(a, c, d, D.id2(c, d, am[h]), st.at({g, f})),
                                  st.at({h, C.comp_at(g, f)}));
            if (left != right) return;
          }
        }
      out.push_back(LaxFromCat{C, D, om, am, st});
      return;
    }
    auto [g, f] = free_pairs[k];
    auto [a, c, lhs, rhs] = cell_src(g, f);
    for (int cell : D.hom(a, c).hom(lhs, rhs)) {
      if (++nodes > budget) throw BudgetExceeded("enumerate_lax_functors: search too large", nodes);
      st[{g, f}] = cell;
      place_st(k + 1);
    }
    st.erase({g, f});
  };

  std::function<void(size_t)> place_arr = [&](size_t k) {
    if (k == nonid.size()) {
      st.clear();
      // pin the pairs with an identity factor
      for (auto [g, f] : all_pairs)
        if (C.arrows[g].is_identity || C.arrows[f].is_identity) {
          auto [a, c, lhs, rhs] = cell_src(g, f);
          if (lhs != rhs) return;  // unit strictness of D makes this impossible
          st[{g, f}] = D.hom(a, c).identity(lhs);
        }
      place_st(0);
      return;
    }
    int f = nonid[k];
    ObjId a = om[C.arrows[f].src], b = om[C.arrows[f].tgt];
    for (int img = 0; img < D.n1(a, b); ++img) {
      if (++nodes > budget) throw BudgetExceeded("enumerate_lax_functors: search too large", nodes);
      am[f] = img;
      place_arr(k + 1);
    }
    am[f] = -1;
  };

  bool more = true;
  while (more) {
    for (ObjId c = 0; c < C.n_objects; ++c) am[C.identity(c)] = D.id1[om[c]];
    place_arr(0);
    int i = C.n_objects - 1;
    while (i >= 0 && om[i] == D.n_objects - 1) om[i--] = 0;
    if (i < 0)
      more = false;
    else
      ++om[i];
  }
  return out;
}

inline bool same_lax(const LaxFromCat& u, const LaxFromCat& v) {
  return u.obj_map == v.obj_map && u.one_map == v.one_map && u.structural == v.structural;
}

/// An ordinary functor F: C -> D viewed as a (strict) lax functor from C
/// into the discrete-hom 2-category on D. Every structural cell is an
/// identity.
inline LaxFromCat lax_from_functor(const CatFunctor& F) {
  LaxFromCat u;
  u.source = F.source;
  u.target = from_category(F.target);
  u.obj_map = F.obj_map;
  u.one_map.resize(F.source.arrow_count());
  for (ArrId f = 0; f < F.source.arrow_count(); ++f) {
    auto h = F.target.hom(F.obj_map[F.source.arrows[f].src], F.obj_map[F.source.arrows[f].tgt]);
    u.one_map[f] = (int)(std::find(h.begin(), h.end(), F.arr_map[f]) - h.begin());
  }
  for (ArrId g = 0; g < F.source.arrow_count(); ++g)
    for (ArrId f = 0; f < F.source.arrow_count(); ++f)
      if (F.source.composable(g, f))
        u.structural[{g, f}] = u.one_map[F.source.comp_at(g, f)];
  return u;
}

/// Composite of a strict 2-functor after a normal lax functor; the result is
/// again normal lax, with structural cells the images of the originals.
inline LaxFromCat compose_strict_after_lax(const TwoFunctor& F, const LaxFromCat& u) {
  if (F.source.n_objects != u.target.n_objects)
    throw PreconditionError("compose_strict_after_lax: middle 2-category mismatch");
  LaxFromCat w;
  w.source = u.source;
  w.target = F.target;
  w.obj_map.resize(u.source.n_objects);
  for (ObjId c = 0; c < u.source.n_objects; ++c) w.obj_map[c] = F.obj_map[u.obj_map[c]];
  w.one_map.resize(u.source.arrow_count());
  for (int f = 0; f < u.source.arrow_count(); ++f) {
    int p = u.target.pair(u.obj_map[u.source.arrows[f].src], u.obj_map[u.source.arrows[f].tgt]);
    w.one_map[f] = F.one_maps[p][u.one_map[f]];
  }
  for (const auto& [pr, cell] : u.structural) {
    auto [g, f] = pr;
    int p = u.target.pair(u.obj_map[u.source.arrows[f].src], u.obj_map[u.source.arrows[g].tgt]);
    w.structural[pr] = F.two_maps[p][cell];
  }
  return w;
}

// ---------------------------------------------------------------------------
// Category-valued lax functors
// ---------------------------------------------------------------------------

/// A normal lax functor from a 2-category into the 2-category of finite
/// categories: a category per object, a functor per 1-arrow, a natural
/// transformation per 2-cell, and structural transformations
/// F(gf) => F(g)F(f) per composable pair of 1-arrows.
struct CatValuedLaxFunctor {
  Fin2Category base;
  std::vector<FinCategory> values;
  std::vector<std::vector<CatFunctor>> arrow_functors;  // [pair][local 1-arrow]
  std::vector<std::vector<NatTransf>> cell_transfs;     // [pair][local 2-cell]
  // key: (c, c', c'', g, f) with g in hom(c',c''), f in hom(c,c')
  std::map<std::tuple<int, int, int, int, int>, NatTransf> structural;

  const CatFunctor& on_arrow(ObjId c, ObjId d, int f) const {
    return arrow_functors[base.pair(c, d)][f];
  }
  const NatTransf& on_cell(ObjId c, ObjId d, int a) const {
    return cell_transfs[base.pair(c, d)][a];
  }
  const NatTransf& structural_at(ObjId c, ObjId d, ObjId e, int g, int f) const {
    auto it = structural.find({c, d, e, g, f});
    if (it == structural.end())
      throw PreconditionError("cat-valued lax functor: missing structural transformation");
    return it->second;
  }
};

inline ValidationReport validate_cat_valued(const CatValuedLaxFunctor& F) {
  ValidationReport r;
  const Fin2Category& B = F.base;
  const int n = B.n_objects;
  if ((int)F.values.size() != n || (int)F.arrow_functors.size() != n * n ||
      (int)F.cell_transfs.size() != n * n) {
    r.add("catlax-size", "component lists have wrong sizes");
    return r;
  }
  for (ObjId c = 0; c < n; ++c) r.absorb(validate(F.values[c]), "value at " + B.obj_name(c) + ": ");
  if (!r.ok()) return r;
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d) {
      if ((int)F.arrow_functors[B.pair(c, d)].size() != B.n1(c, d) ||
          (int)F.cell_transfs[B.pair(c, d)].size() != B.n2(c, d)) {
        r.add("catlax-size", "functor or transformation list has wrong size at hom(" +
                                 B.obj_name(c) + "," + B.obj_name(d) + ")");
        return r;
      }
      for (int f = 0; f < B.n1(c, d); ++f)
        r.absorb(validate_functor(F.on_arrow(c, d, f)),
                 "functor of " + B.one_name(c, d, f) + ": ");
    }
  if (!r.ok()) return r;
  // normality on identity 1-arrows
  for (ObjId c = 0; c < n; ++c) {
    const CatFunctor& I = F.on_arrow(c, c, B.id1[c]);
    if (!same_maps(I, identity_functor(F.values[c])))
      r.add("catlax-normal", "identity 1-arrow of " + B.obj_name(c) + " is not the identity functor");
  }
  // 2-cells: valid transformations, functorial in the vertical direction
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d) {
      const FinCategory& H = B.hom(c, d);
      for (int a = 0; a < H.arrow_count(); ++a) {
        const NatTransf& t = F.on_cell(c, d, a);
        r.absorb(validate_nat(F.on_arrow(c, d, H.arrows[a].src), F.on_arrow(c, d, H.arrows[a].tgt), t),
                 "cell " + B.two_name(c, d, a) + ": ");
        if (H.arrows[a].is_identity)
          for (ObjId x = 0; x < F.values[c].n_objects; ++x)
            if (t.components[x] !=
                F.values[d].identity(F.on_arrow(c, d, H.arrows[a].src).obj_map[x]))
              r.add("catlax-cell-id", "identity 2-cell not sent to the identity transformation");
      }
      for (int b = 0; b < H.arrow_count(); ++b)
        for (int a = 0; a < H.arrow_count(); ++a) {
          if (!H.composable(b, a)) continue;
          const NatTransf& tb = F.on_cell(c, d, b);
          const NatTransf& ta = F.on_cell(c, d, a);
          const NatTransf& tba = F.on_cell(c, d, H.comp_at(b, a));
          for (ObjId x = 0; x < F.values[c].n_objects; ++x)
            if (tba.components[x] != F.values[d].comp_at(tb.components[x], ta.components[x]))
              r.add("catlax-vertical", "vertical composition of 2-cells not preserved at hom(" +
                                           B.obj_name(c) + "," + B.obj_name(d) + ")");
        }
    }
  if (!r.ok()) return r;
  // structural transformations: endpoints, normality, naturality in 2-cells,
  // and the coherence cocycle, all checked componentwise
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d)
      for (ObjId e = 0; e < n; ++e)
        for (int g = 0; g < B.n1(d, e); ++g)
          for (int f = 0; f < B.n1(c, d); ++f) {
            auto it = F.structural.find({c, d, e, g, f});
            if (it == F.structural.end()) {
              r.add("catlax-structural-missing", "missing structural transformation at (" +
                                                     B.obj_name(c) + "," + B.obj_name(d) + "," +
                                                     B.obj_name(e) + ")");
              continue;
            }
            const NatTransf& t = it->second;
            const CatFunctor& Fg = F.on_arrow(d, e, g);
            const CatFunctor& Ff = F.on_arrow(c, d, f);
            const CatFunctor& Fgf = F.on_arrow(c, e, B.h1(c, d, e, g, f));
            CatFunctor comp = compose_functors(Fg, Ff);
            comp.source = Fgf.source;
            comp.target = Fgf.target;
            r.absorb(validate_nat(Fgf, comp, t), "structural at (" + B.one_name(d, e, g) + "," +
                                                     B.one_name(c, d, f) + "): ");
            bool ident = (d == e && g == B.id1[d]) || (c == d && f == B.id1[c]);
            if (ident)
              for (ObjId x = 0; x < F.values[c].n_objects; ++x)
                if (t.components[x] != F.values[e].identity(Fgf.obj_map[x]))
                  r.add("catlax-normal", "structural transformation with an identity factor is "
                                         "not the identity");
          }
  if (!r.ok()) return r;
  for (ObjId c = 0; c < n; ++c)
    for (ObjId d = 0; d < n; ++d)
      for (ObjId e = 0; e < n; ++e) {
        // naturality in both 2-cell arguments
        const FinCategory& Hcd = B.hom(c, d);
        const FinCategory& Hde = B.hom(d, e);
        for (int bb = 0; bb < Hde.arrow_count(); ++bb)
          for (int aa = 0; aa < Hcd.arrow_count(); ++aa) {
            int g = Hde.arrows[bb].src, g2 = Hde.arrows[bb].tgt;
            int f = Hcd.arrows[aa].src, f2 = Hcd.arrows[aa].tgt;
            const NatTransf& sgf = F.structural_at(c, d, e, g, f);
            const NatTransf& sg2f2 = F.structural_at(c, d, e, g2, f2);
            const NatTransf& tb = F.on_cell(d, e, bb);
            const NatTransf& ta = F.on_cell(c, d, aa);
            const NatTransf& tba = F.on_cell(c, e, B.h2(c, d, e, bb, aa));
            const CatFunctor& Fg2 = F.on_arrow(d, e, g2);
            const CatFunctor& Ff = F.on_arrow(c, d, f);
            for (ObjId x = 0; x < F.values[c].n_objects; ++x) {
              // (tb o ta)_x = F(g2)(ta_x) . tb_{F(f)(x)}
              int horiz = F.values[e].comp_at(Fg2.arr_map[ta.components[x]],
                                              tb.components[Ff.obj_map[x]]);
              int lhs = F.values[e].comp_at(horiz, sgf.components[x]);
              int rhs = F.values[e].comp_at(sg2f2.components[x], tba.components[x]);
              if (lhs != rhs) {
                r.add("catlax-naturality", "structural transformations are not natural in the "
                                           "2-cells at hom(" + B.obj_name(c) + "," +
                                               B.obj_name(d) + "," + B.obj_name(e) + ")");
                break;
              }
            }
          }
        for (ObjId x2 = 0; x2 < n; ++x2)
          for (int h = 0; h < B.n1(e, x2); ++h)
            for (int g = 0; g < B.n1(d, e); ++g)
              for (int f = 0; f < B.n1(c, d); ++f) {
                const NatTransf& s_hg = F.structural_at(d, e, x2, h, g);
                const NatTransf& s_hg_f = F.structural_at(c, d, x2, B.h1(d, e, x2, h, g), f);
                const NatTransf& s_gf = F.structural_at(c, d, e, g, f);
                const NatTransf& s_h_gf = F.structural_at(c, e, x2, h, B.h1(c, d, e, g, f));
                const CatFunctor& Ff = F.on_arrow(c, d, f);
                const CatFunctor& Fh = F.on_arrow(e, x2, h);
                for (ObjId x = 0; x < F.values[c].n_objects; ++x) {
                  int lhs = F.values[x2].comp_at(s_hg.components[Ff.obj_map[x]],
                                                 s_hg_f.components[x]);
                  int rhs = F.values[x2].comp_at(Fh.arr_map[s_gf.components[x]],
                                                 s_h_gf.components[x]);
                  if (lhs != rhs) {
                    r.add("catlax-cocycle", "coherence fails at (" + B.one_name(e, x2, h) + "," +
                                                B.one_name(d, e, g) + "," + B.one_name(c, d, f) +
                                                ")");
                    break;
                  }
                }
              }
      }
  return r;
}

/// True when every structural transformation is an identity.
inline bool cat_valued_is_strict(const CatValuedLaxFunctor& F) {
  for (const auto& [key, t] : F.structural) {
    ObjId c = std::get<0>(key);
    ObjId e = std::get<2>(key);
    for (ObjId x = 0; x < F.values[c].n_objects; ++x)
      if (!F.values[e].arrows[t.components[x]].is_identity) return false;
  }
  return true;
}

/// The covariant hom 2-functor of an object c, defined on the 1-arrow dual:
/// it sends c' to hom(c', c), precomposes 1-arrows, and whiskers 2-cells.
/// Strict because the ambient 2-category is.
inline CatValuedLaxFunctor representable(const Fin2Category& T, ObjId c) {
  CatValuedLaxFunctor F;
  F.base = op2(T);
  const Fin2Category& B = F.base;
  const int n = T.n_objects;
  F.values.resize(n);
  for (ObjId x = 0; x < n; ++x) F.values[x] = T.hom(x, c);
  F.arrow_functors.resize(n * n);
  F.cell_transfs.resize(n * n);
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y) {
      // a base 1-arrow x -> y is a 1-arrow y -> x of T
      const FinCategory& H = B.hom(x, y);  // = T.hom(y, x)
      auto& funs = F.arrow_functors[B.pair(x, y)];
      auto& cells = F.cell_transfs[B.pair(x, y)];
      funs.reserve(H.n_objects);
      for (int a = 0; a < H.n_objects; ++a) {
        CatFunctor G{F.values[x], F.values[y], {}, {}};
        G.obj_map.resize(F.values[x].n_objects);
        G.arr_map.resize(F.values[x].arrow_count());
        for (int b = 0; b < F.values[x].n_objects; ++b)
          G.obj_map[b] = T.h1(y, x, c, b, a);
        for (int m = 0; m < F.values[x].arrow_count(); ++m)
          G.arr_map[m] = T.h2(y, x, c, m, T.id2(y, x, a));
        funs.push_back(std::move(G));
      }
      cells.reserve(H.arrow_count());
      for (int mu = 0; mu < H.arrow_count(); ++mu) {
        NatTransf t;
        t.components.resize(F.values[x].n_objects);
        for (int b = 0; b < F.values[x].n_objects; ++b)
          t.components[b] = T.h2(y, x, c, T.id2(x, c, b), mu);
        cells.push_back(std::move(t));
      }
    }
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      for (ObjId z = 0; z < n; ++z)
        for (int g = 0; g < B.n1(y, z); ++g)
          for (int f = 0; f < B.n1(x, y); ++f) {
            NatTransf t;
            t.components.resize(F.values[x].n_objects);
            int gf = B.h1(x, y, z, g, f);
            for (int b = 0; b < F.values[x].n_objects; ++b) {
              int obj = F.on_arrow(x, z, gf).obj_map[b];
              t.components[b] = F.values[z].identity(obj);
            }
            F.structural[{x, y, z, g, f}] = std::move(t);
          }
  return F;
}

}  // namespace fincat

#endif
