#ifndef FINCAT_TILDE_HPP
#define FINCAT_TILDE_HPP

#include "fincat/subdivision.hpp"
#include "fincat/twocat.hpp"

namespace fincat {

/// Block sum of reindexings: act as `a` on the first p vertices, then as `b`
/// shifted past the images of `a`. The fused vertex p is governed by `a`.
inline OrdinalMap triangle(const OrdinalMap& a, const OrdinalMap& b) {
  OrdinalMap r;
  r.dom = a.dom + b.dom;
  r.cod = a.cod + b.cod;
  r.v.resize(r.dom + 1);
  for (int i = 0; i <= a.dom; ++i) r.v[i] = a(i);
  for (int i = 1; i <= b.dom; ++i) r.v[a.dom + i] = b(i) + a.cod;
  return r;
}

struct TriangleLawReport {
  bool ok = true;
  long long checked = 0;
  std::string detail;
};

/// Property test of the block-sum laws over every ordinal map between
/// ordinals of at most max_n + 1 elements:
///   (a) identities sum to the identity,
///   (b) (a'a) # (b'b) = (a' # b') . (a # b)   when b omits 0 except at 0,
///   (c) the sum is associative,
///   (d) the empty ordinal is a right unit, and a left unit when a(0) = 0.
inline TriangleLawReport triangle_law_check(int max_n = 3) {
  TriangleLawReport R;
  auto fail = [&](const std::string& what) {
    R.ok = false;
    if (R.detail.empty()) R.detail = what;
  };
  std::vector<std::vector<std::vector<OrdinalMap>>> pool(max_n + 1);
  for (int p = 0; p <= max_n; ++p) {
    pool[p].resize(max_n + 1);
    for (int q = 0; q <= max_n; ++q) pool[p][q] = all_ordinal_maps(p, q);
  }
  auto omits_inner_zero = [](const OrdinalMap& b) {
    for (int i = 1; i <= b.dom; ++i)
      if (b(i) == 0) return false;
    return true;
  };
  // (a)
  for (int p = 0; p <= max_n; ++p)
    for (int q = 0; q <= max_n; ++q) {
      ++R.checked;
      if (!(triangle(ordinal_id(p), ordinal_id(q)) == ordinal_id(p + q)))
        fail("identity law fails at (" + std::to_string(p) + ", " + std::to_string(q) + ")");
    }
  // (b)
  for (int p = 0; p <= max_n; ++p)
    for (int pp = 0; pp <= max_n; ++pp)
      for (int ppp = 0; ppp <= max_n; ++ppp)
        for (const auto& a : pool[p][pp])
          for (const auto& ap : pool[pp][ppp])
            for (int q = 0; q <= max_n; ++q)
              for (int qp = 0; qp <= max_n; ++qp)
                for (int qpp = 0; qpp <= max_n; ++qpp)
                  for (const auto& b : pool[q][qp]) {
                    if (!omits_inner_zero(b)) continue;
                    for (const auto& bp : pool[qp][qpp]) {
                      ++R.checked;
                      OrdinalMap lhs = triangle(ordinal_compose(ap, a), ordinal_compose(bp, b));
                      OrdinalMap rhs = ordinal_compose(triangle(ap, bp), triangle(a, b));
                      if (!(lhs == rhs)) fail("composition law fails");
                    }
                  }
  // (c)
  std::vector<OrdinalMap> flat;
  for (int p = 0; p <= max_n; ++p)
    for (int q = 0; q <= max_n; ++q)
      for (const auto& m : pool[p][q]) flat.push_back(m);
  for (const auto& a : flat)
    for (const auto& b : flat)
      for (const auto& c : flat) {
        ++R.checked;
        if (!(triangle(triangle(a, b), c) == triangle(a, triangle(b, c))))
          fail("associativity fails");
      }
  // (d)
  for (const auto& a : flat) {
    ++R.checked;
    if (!(triangle(a, ordinal_id(0)) == a)) fail("right unit fails");
    if (a(0) == 0 && !(triangle(ordinal_id(0), a) == a)) fail("left unit fails");
  }
  if (R.ok) R.detail = "all laws hold";
  return R;
}

// ---------------------------------------------------------------------------
// The chain 2-category of a loop-free category
// ---------------------------------------------------------------------------

/// C~: objects those of C, 1-arrows the identity-free chains, 2-cells the
/// endpoint-preserving injective reindexings from a chain to any refinement
/// of it. Horizontal composition juxtaposes chains and block-sums cells. The
/// unit is lax (a chain per arrow, structural cells split composites); the
/// total-composite projection back to C is strict.
struct Tilde {
  Fin2Category cat;
  FinCategory base;
  std::vector<std::vector<ChainSimplex>> chains;     // [pair(c,d)][local 1-arrow]
  std::vector<std::vector<OrdinalMap>> cell_maps;    // [pair(c,d)][local 2-cell]
  LaxFromCat eta;  // base -> cat
  TwoFunctor pi;   // cat -> base as a discrete-hom 2-category
};

namespace detail {

/// The unique candidate reindexing that exhibits y as a coarsening of x, if
/// any: vertices of y are located inside x (objects along a loop-free chain
/// are distinct), then segment composites must reproduce the arrows of y.
inline std::optional<OrdinalMap> coarsening_map(const FinCategory& C, const ChainSimplex& y,
                                                const ChainSimplex& x) {
  OrdinalMap a;
  a.dom = y.dim();
  a.cod = x.dim();
  a.v.resize(y.dim() + 1);
  int prev = -1;
  for (int i = 0; i <= y.dim(); ++i) {
    int pos = -1;
    for (int j = 0; j <= x.dim(); ++j)
      if (x.objects[j] == y.objects[i]) pos = j;
    if (pos <= prev) return std::nullopt;  // missing or out of order
    a.v[i] = pos;
    prev = pos;
  }
  if (a.v[0] != 0 || a.v[y.dim()] != x.dim()) return std::nullopt;
  for (int i = 1; i <= y.dim(); ++i)
    if (chain_composite(C, x, a(i - 1), a(i)) != y.arrows[i - 1]) return std::nullopt;
  return a;
}

}  // namespace detail

inline Tilde tilde(const FinCategory& C) {
  if (!loop_free(C)) throw PreconditionError("tilde: base category must be loop-free");
  Tilde T;
  T.base = C;
  Fin2Category& D = T.cat;
  D.n_objects = C.n_objects;
  D.obj_names = C.obj_names;
  D.homs.resize((size_t)C.n_objects * C.n_objects);
  T.chains.resize(D.homs.size());
  T.cell_maps.resize(D.homs.size());

  std::map<std::pair<std::vector<ObjId>, std::vector<ArrId>>, std::pair<int, int>> locate;
  for (const auto& x : detail::enumerate_chains(C, longest_chain_length(C), true)) {
    int p = D.pair(x.objects.front(), x.objects.back());
    locate[{x.objects, x.arrows}] = {p, (int)T.chains[p].size()};
    T.chains[p].push_back(x);
  }

  // hom categories: thin, one arrow x -> y per refinement y of x
  std::vector<std::map<std::pair<int, int>, int>> arrow_at(D.homs.size());
  for (ObjId c = 0; c < C.n_objects; ++c)
    for (ObjId d = 0; d < C.n_objects; ++d) {
      int p = D.pair(c, d);
      FinCategory& H = D.homs[p];
      H.n_objects = (int)T.chains[p].size();
      for (int i = 0; i < H.n_objects; ++i) H.obj_names.push_back(chain_label(C, T.chains[p][i]));
      for (int i = 0; i < H.n_objects; ++i)
        for (int j = 0; j < H.n_objects; ++j) {
          std::optional<OrdinalMap> a;
          if (i == j)
            a = ordinal_id(T.chains[p][i].dim());
          else
            a = detail::coarsening_map(C, T.chains[p][i], T.chains[p][j]);
          if (!a) continue;
          arrow_at[p][{i, j}] = H.arrow_count();
          H.arrows.push_back({i, j, i == j});
          H.arr_names.push_back("c" + std::to_string(H.arrow_count() - 1));
          T.cell_maps[p].push_back(*a);
        }
      H.finalize();
      for (ArrId g = 0; g < H.arrow_count(); ++g)
        for (ArrId f = 0; f < H.arrow_count(); ++f)
          if (H.composable(g, f))
            H.set_comp(g, f, arrow_at[p].at({H.arrows[f].src, H.arrows[g].tgt}));
    }

  D.id1.resize(C.n_objects);
  for (ObjId c = 0; c < C.n_objects; ++c)
    D.id1[c] = locate.at({{c}, {}}).second;

  D.alloc_tables();
  auto juxtapose = [](const ChainSimplex& f, const ChainSimplex& g) {
    ChainSimplex r = f;
    r.objects.insert(r.objects.end(), g.objects.begin() + 1, g.objects.end());
    r.arrows.insert(r.arrows.end(), g.arrows.begin(), g.arrows.end());
    return r;
  };
  for (ObjId c = 0; c < C.n_objects; ++c)
    for (ObjId d = 0; d < C.n_objects; ++d)
      for (ObjId e = 0; e < C.n_objects; ++e) {
        int pf = D.pair(c, d), pg = D.pair(d, e);
        for (int g = 0; g < D.n1(d, e); ++g)
          for (int f = 0; f < D.n1(c, d); ++f) {
            ChainSimplex gf = juxtapose(T.chains[pf][f], T.chains[pg][g]);
            D.set_h1(c, d, e, g, f, locate.at({gf.objects, gf.arrows}).second);
          }
        const FinCategory& Hf = D.hom(c, d);
        const FinCategory& Hg = D.hom(d, e);
        for (int b = 0; b < Hg.arrow_count(); ++b)
          for (int a = 0; a < Hf.arrow_count(); ++a) {
            int src = D.h1(c, d, e, Hg.arrows[b].src, Hf.arrows[a].src);
            int tgt = D.h1(c, d, e, Hg.arrows[b].tgt, Hf.arrows[a].tgt);
            D.set_h2(c, d, e, b, a, arrow_at[D.pair(c, e)].at({src, tgt}));
          }
      }

  // the lax unit: arrows become 1-chains, structural cells split a composite
  // into the juxtaposition of its factors
  T.eta.source = C;
  T.eta.target = D;
  for (ObjId c = 0; c < C.n_objects; ++c) T.eta.obj_map.push_back(c);
  for (ArrId f = 0; f < C.arrow_count(); ++f) {
    if (C.is_identity(f))
      T.eta.one_map.push_back(D.id1[C.arrows[f].src]);
    else
      T.eta.one_map.push_back(
          locate.at({{C.arrows[f].src, C.arrows[f].tgt}, {f}}).second);
  }
  for (ArrId g = 0; g < C.arrow_count(); ++g)
    for (ArrId f = 0; f < C.arrow_count(); ++f) {
      if (!C.composable(g, f)) continue;
      ObjId c = C.arrows[f].src, e = C.arrows[g].tgt;
      int p = D.pair(c, e);
      int from = T.eta.one_map[C.comp_at(g, f)];
      if (C.is_identity(g) || C.is_identity(f)) {
        T.eta.structural[{g, f}] = D.hom(c, e).identity(from);
      } else {
        int to = D.h1(c, C.arrows[f].tgt, e, T.eta.one_map[g], T.eta.one_map[f]);
        T.eta.structural[{g, f}] = arrow_at[p].at({from, to});
      }
    }

  // the strict projection: a chain maps to its total composite
  Fin2Category base2 = from_category(C);
  T.pi.source = D;
  T.pi.target = base2;
  T.pi.obj_map = T.eta.obj_map;
  T.pi.one_maps.resize(D.homs.size());
  T.pi.two_maps.resize(D.homs.size());
  for (ObjId c = 0; c < C.n_objects; ++c)
    for (ObjId d = 0; d < C.n_objects; ++d) {
      int p = D.pair(c, d);
      std::vector<ArrId> tgt_hom = C.hom(c, d);
      auto local_in_base = [&](ArrId f) {
        return (int)(std::find(tgt_hom.begin(), tgt_hom.end(), f) - tgt_hom.begin());
      };
      for (const auto& x : T.chains[p])
        T.pi.one_maps[p].push_back(local_in_base(chain_composite(C, x, 0, x.dim())));
      for (int t = 0; t < D.hom(c, d).arrow_count(); ++t) {
        int img = T.pi.one_maps[p][D.hom(c, d).arrows[t].src];
        T.pi.two_maps[p].push_back(base2.hom(c, d).identity(img));
      }
    }
  return T;
}

/// Strictification of a lax functor out of the base: chains map to iterated
/// composites of the arrow images, refinement cells to the coherence cells
/// assembled from the structural data.
inline TwoFunctor factor_through_tilde(const LaxFromCat& v, const Tilde& T) {
  const Fin2Category& D = v.target;
  TwoFunctor u;
  u.source = T.cat;
  u.target = D;
  u.obj_map = v.obj_map;

  auto img1 = [&](const ChainSimplex& x) -> int {
    if (x.dim() == 0) return D.id1[v.obj_map[x.objects[0]]];
    ObjId vc = v.obj_map[x.objects[0]];
    int acc = v.one_map[x.arrows[0]];
    for (int i = 1; i < x.dim(); ++i)
      acc = D.h1(vc, v.obj_map[x.objects[i]], v.obj_map[x.objects[i + 1]],
                 v.one_map[x.arrows[i]], acc);
    return acc;
  };

  // coherence cell v(total composite) => v(f_n) . ... . v(f_1)
  std::function<int(const ChainSimplex&)> expand = [&](const ChainSimplex& x) -> int {
    ObjId vc = v.obj_map[x.objects.front()], vd = v.obj_map[x.objects.back()];
    if (x.dim() == 1) return D.id2(vc, vd, v.one_map[x.arrows[0]]);
    ChainSimplex rest{std::vector<ObjId>(x.objects.begin() + 1, x.objects.end()),
                      std::vector<ArrId>(x.arrows.begin() + 1, x.arrows.end())};
    ObjId v1 = v.obj_map[x.objects[1]];
    ArrId g = chain_composite(T.base, x, 1, x.dim());
    int split = lax_structural(v, g, x.arrows[0]);  // v(g f1) => v(g) . v(f1)
    int horiz = D.h2(vc, v1, vd, expand(rest), D.id2(vc, v1, v.one_map[x.arrows[0]]));
    return D.hom(vc, vd).compose(horiz, split);
  };

  u.one_maps.resize(T.cat.homs.size());
  u.two_maps.resize(T.cat.homs.size());
  for (ObjId c = 0; c < T.cat.n_objects; ++c)
    for (ObjId d = 0; d < T.cat.n_objects; ++d) {
      int p = T.cat.pair(c, d);
      for (const auto& x : T.chains[p]) u.one_maps[p].push_back(img1(x));
      for (int t = 0; t < T.cat.hom(c, d).arrow_count(); ++t) {
        const ChainSimplex& y = T.chains[p][T.cat.hom(c, d).arrows[t].src];
        const ChainSimplex& x = T.chains[p][T.cat.hom(c, d).arrows[t].tgt];
        const OrdinalMap& a = T.cell_maps[p][t];
        if (x.dim() == 0) {
          u.two_maps[p].push_back(D.id2(v.obj_map[c], v.obj_map[c], D.id1[v.obj_map[c]]));
          continue;
        }
        // one coherence cell per vertex gap of y inside x, composed across
        int acc = -1;
        ObjId vc = v.obj_map[x.objects[0]];
        for (int j = 1; j <= y.dim(); ++j) {
          ChainSimplex seg{
              std::vector<ObjId>(x.objects.begin() + a(j - 1), x.objects.begin() + a(j) + 1),
              std::vector<ArrId>(x.arrows.begin() + a(j - 1), x.arrows.begin() + a(j))};
          int cell = expand(seg);
          if (j == 1)
            acc = cell;
          else
            acc = D.h2(vc, v.obj_map[y.objects[j - 1]], v.obj_map[y.objects[j]], cell, acc);
        }
        u.two_maps[p].push_back(acc);
      }
    }
  return u;
}

struct UniversalPropertyReport {
  bool ok = false;
  int n_strict = 0;
  int n_lax = 0;
  std::string detail;
};

/// Restriction along the lax unit must put the strict 2-functors out of the
/// chain 2-category in bijection with the lax functors out of the base, and
/// the explicit strictification must invert it.
inline UniversalPropertyReport universal_property_check(const FinCategory& C,
                                                        const Fin2Category& D,
                                                        long long budget = 5000000) {
  Tilde T = tilde(C);
  auto strict = enumerate_two_functors(T.cat, D, budget);
  auto lax = enumerate_lax_functors(C, D, budget);
  UniversalPropertyReport R;
  R.n_strict = (int)strict.size();
  R.n_lax = (int)lax.size();
  if (R.n_strict != R.n_lax) {
    R.detail = "count mismatch: " + std::to_string(R.n_strict) + " strict vs " +
               std::to_string(R.n_lax) + " lax";
    return R;
  }
  std::vector<int> hits(lax.size(), 0);
  for (const auto& s : strict) {
    LaxFromCat w = compose_strict_after_lax(s, T.eta);
    int found = -1;
    for (size_t i = 0; i < lax.size(); ++i)
      if (same_lax(w, lax[i])) {
        found = (int)i;
        break;
      }
    if (found < 0) {
      R.detail = "restriction along the unit leaves the lax enumeration";
      return R;
    }
    ++hits[found];
  }
  for (int h : hits)
    if (h != 1) {
      R.detail = "restriction along the unit is not injective";
      return R;
    }
  for (const auto& v : lax) {
    TwoFunctor s = factor_through_tilde(v, T);
    if (!validate_two_functor(s).ok()) {
      R.detail = "strictification is not a 2-functor";
      return R;
    }
    if (!same_lax(compose_strict_after_lax(s, T.eta), v)) {
      R.detail = "strictification does not restrict back to its input";
      return R;
    }
  }
  R.ok = true;
  R.detail = "bijection on " + std::to_string(R.n_lax) + " functors";
  return R;
}

}  // namespace fincat

#endif
