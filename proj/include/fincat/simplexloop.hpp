#ifndef FINCAT_SIMPLEXLOOP_HPP
#define FINCAT_SIMPLEXLOOP_HPP

#include <map>
#include <optional>

#include "fincat/fibers.hpp"
#include "fincat/homology.hpp"
#include "fincat/pi1.hpp"
#include "fincat/simplicial.hpp"

namespace fincat {

// ---------------------------------------------------------------------------
// The category of simplices of a 2-category
// ---------------------------------------------------------------------------

/// A composable string of 1-arrows. `arrows[i]` is the local index of a
/// 1-arrow objects[i] -> objects[i+1]; identity 1-arrows are allowed.
struct Chain2 {
  std::vector<ObjId> objects;
  std::vector<int> arrows;
  int dim() const { return (int)arrows.size(); }
  bool operator==(const Chain2& o) const { return objects == o.objects && arrows == o.arrows; }
};

/// Composite 1-arrow of the segment [i, j] (the identity when i == j).
inline int chain2_composite(const Fin2Category& T, const Chain2& x, int i, int j) {
  if (i == j) return T.id1[x.objects[i]];
  int f = x.arrows[i];
  for (int k = i + 1; k < j; ++k)
    f = T.h1(x.objects[i], x.objects[k], x.objects[k + 1], x.arrows[k], f);
  return f;
}

inline std::string chain2_label(const Fin2Category& T, const Chain2& x) {
  if (x.dim() == 0) return "[" + T.obj_name(x.objects[0]) + "]";
  std::string s = "[";
  for (int i = 0; i < x.dim(); ++i) {
    if (i) s += "|";
    s += T.one_name(x.objects[i], x.objects[i + 1], x.arrows[i]);
  }
  return s + "]";
}

/// A morphism of simplices: a reindexing together with one comparison
/// 2-cell per segment, cells[i-1]: (target composite over [a(i-1), a(i)])
/// => arrows[i-1] of the source chain.
struct SimplexArrow {
  OrdinalMap a;
  std::vector<int> cells;
};

/// The category of simplices of a 2-category, truncated at `bound`: objects
/// are chains of 1-arrows (identities allowed), morphisms reindex a chain
/// into a finer one and record a comparison 2-cell for every segment.
struct TwoSimplexCategory {
  FinCategory cat;
  std::vector<Chain2> chains;        // per object of cat
  std::vector<SimplexArrow> arrows;  // per arrow of cat
  Fin2Category base;
  int bound = 0;
};

inline TwoSimplexCategory delta2(const Fin2Category& T, int bound) {
  if (bound < 0) throw PreconditionError("delta2: negative truncation");
  TwoSimplexCategory S;
  S.base = T;
  S.bound = bound;
  std::vector<Chain2> layer;
  for (ObjId c = 0; c < T.n_objects; ++c) layer.push_back({{c}, {}});
  S.chains = layer;
  for (int n = 1; n <= bound; ++n) {
    std::vector<Chain2> next;
    for (const auto& x : layer) {
      ObjId last = x.objects.back();
      for (ObjId d = 0; d < T.n_objects; ++d)
        for (int f = 0; f < T.n1(last, d); ++f) {
          Chain2 y = x;
          y.objects.push_back(d);
          y.arrows.push_back(f);
          next.push_back(std::move(y));
        }
    }
    S.chains.insert(S.chains.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  S.cat.n_objects = (int)S.chains.size();
  for (auto& x : S.chains) S.cat.obj_names.push_back(chain2_label(T, x));

  std::map<std::tuple<int, int, std::vector<int>, std::vector<int>>, ArrId> lookup;
  for (int s = 0; s < S.cat.n_objects; ++s)
    for (int t = 0; t < S.cat.n_objects; ++t) {
      const Chain2& x = S.chains[s];
      const Chain2& xp = S.chains[t];
      for (const OrdinalMap& a : all_ordinal_maps(x.dim(), xp.dim())) {
        bool ok = true;
        for (int i = 0; i <= x.dim() && ok; ++i) ok = xp.objects[a(i)] == x.objects[i];
        if (!ok) continue;
        // candidate comparison cells per segment
        std::vector<std::vector<int>> choices(x.dim());
        for (int i = 1; i <= x.dim() && ok; ++i) {
          const FinCategory& H = T.hom(x.objects[i - 1], x.objects[i]);
          int comp = chain2_composite(T, xp, a(i - 1), a(i));
          for (int m = 0; m < H.arrow_count(); ++m)
            if (H.arrows[m].src == comp && H.arrows[m].tgt == x.arrows[i - 1])
              choices[i - 1].push_back(m);
          ok = !choices[i - 1].empty();
        }
        if (!ok) continue;
        std::vector<int> pick(x.dim(), 0);
        while (true) {
          std::vector<int> cells(x.dim());
          for (int i = 0; i < x.dim(); ++i) cells[i] = choices[i][pick[i]];
          bool ident = s == t && is_ordinal_id(a);
          for (int i = 0; i < x.dim() && ident; ++i)
            ident = T.hom(x.objects[i], x.objects[i + 1]).is_identity(cells[i]);
          lookup[{s, t, a.v, cells}] = (ArrId)S.arrows.size();
          S.cat.arrows.push_back({s, t, ident});
          S.cat.arr_names.push_back("w" + std::to_string(S.arrows.size()));
          S.arrows.push_back({a, std::move(cells)});
          int i = 0;
          for (; i < x.dim(); ++i) {
            if (++pick[i] < (int)choices[i].size()) break;
            pick[i] = 0;
          }
          if (i == x.dim()) break;
        }
      }
    }
  S.cat.finalize();
  for (ArrId v = 0; v < S.cat.arrow_count(); ++v)
    for (ArrId w = 0; w < S.cat.arrow_count(); ++w) {
      if (!S.cat.composable(v, w)) continue;
      // w = (a, alpha): x -> x', v = (b, beta): x' -> x''
      const Chain2& x = S.chains[S.cat.arrows[w].src];
      const Chain2& xp = S.chains[S.cat.arrows[w].tgt];
      const SimplexArrow& A = S.arrows[w];
      const SimplexArrow& B = S.arrows[v];
      OrdinalMap ba = ordinal_compose(B.a, A.a);
      std::vector<int> cells(x.dim());
      for (int i = 1; i <= x.dim(); ++i) {
        int p = A.a(i - 1), q = A.a(i);
        int gamma = A.cells[i - 1];
        if (p < q) {
          // horizontal block of beta over the segment, stacked under alpha
          int acc = B.cells[p];
          for (int j = p + 2; j <= q; ++j)
            acc = T.h2(xp.objects[p], xp.objects[j - 1], xp.objects[j], B.cells[j - 1], acc);
          gamma = T.hom(x.objects[i - 1], x.objects[i]).comp_at(A.cells[i - 1], acc);
        }
        cells[i - 1] = gamma;
      }
      S.cat.set_comp(v, w, lookup.at({S.cat.arrows[w].src, S.cat.arrows[v].tgt, ba.v, cells}));
    }
  return S;
}

// ---------------------------------------------------------------------------
// Last-vertex and first-vertex projections
// ---------------------------------------------------------------------------

/// Last-vertex projection: a chain goes to its final object, a morphism to
/// the composite of the target chain beyond the image of the top vertex.
/// Normal lax; its structural cell whiskers the comparison block of the
/// second morphism by the untouched tail.
inline LaxFromCat sup_lax(const TwoSimplexCategory& S) {
  const Fin2Category& T = S.base;
  LaxFromCat u;
  u.source = S.cat;
  u.target = T;
  for (const Chain2& x : S.chains) u.obj_map.push_back(x.objects.back());
  u.one_map.resize(S.cat.arrow_count());
  for (ArrId w = 0; w < S.cat.arrow_count(); ++w) {
    const Chain2& xp = S.chains[S.cat.arrows[w].tgt];
    u.one_map[w] = chain2_composite(T, xp, S.arrows[w].a(S.arrows[w].a.dom), xp.dim());
  }
  for (ArrId v = 0; v < S.cat.arrow_count(); ++v)
    for (ArrId w = 0; w < S.cat.arrow_count(); ++w) {
      if (!S.cat.composable(v, w)) continue;
      const Chain2& x = S.chains[S.cat.arrows[w].src];
      const Chain2& xp = S.chains[S.cat.arrows[w].tgt];
      const Chain2& xpp = S.chains[S.cat.arrows[v].tgt];
      const OrdinalMap& a = S.arrows[w].a;
      const OrdinalMap& b = S.arrows[v].a;
      int n = x.dim(), np = xp.dim(), npp = xpp.dim();
      int p = a(n);
      int cell;
      if (p == np) {
        cell = T.id2(x.objects.back(), xpp.objects.back(), u.one_map[v]);
      } else {
        int acc = S.arrows[v].cells[p];
        for (int j = p + 2; j <= np; ++j)
          acc = T.h2(xp.objects[p], xp.objects[j - 1], xp.objects[j], S.arrows[v].cells[j - 1],
                     acc);
        int tail = chain2_composite(T, xpp, b(np), npp);
        cell = T.h2(xp.objects[p], xp.objects[np], xpp.objects.back(),
                    T.id2(xp.objects[np], xpp.objects.back(), tail), acc);
      }
      u.structural[{v, w}] = cell;
    }
  return u;
}

/// First-vertex projection, landing in the 1-arrow dual. Mirror image of
/// sup_lax: the comparison block sits at the head and is whiskered by the
/// leading composite.
inline LaxFromCat inf_lax(const TwoSimplexCategory& S) {
  const Fin2Category& T = S.base;
  LaxFromCat u;
  u.source = S.cat;
  u.target = op2(T);
  for (const Chain2& x : S.chains) u.obj_map.push_back(x.objects.front());
  u.one_map.resize(S.cat.arrow_count());
  for (ArrId w = 0; w < S.cat.arrow_count(); ++w) {
    // the head composite of the target chain is a 1-arrow back to the
    // source's first object; local indices agree with the reversed hom
    const Chain2& xp = S.chains[S.cat.arrows[w].tgt];
    u.one_map[w] = chain2_composite(T, xp, 0, S.arrows[w].a(0));
  }
  for (ArrId v = 0; v < S.cat.arrow_count(); ++v)
    for (ArrId w = 0; w < S.cat.arrow_count(); ++w) {
      if (!S.cat.composable(v, w)) continue;
      const Chain2& x = S.chains[S.cat.arrows[w].src];
      const Chain2& xp = S.chains[S.cat.arrows[w].tgt];
      const Chain2& xpp = S.chains[S.cat.arrows[v].tgt];
      const OrdinalMap& a = S.arrows[w].a;
      const OrdinalMap& b = S.arrows[v].a;
      int p = a(0);
      int cell;
      if (p == 0) {
        cell = T.hom(xpp.objects[0], x.objects[0]).identity(chain2_composite(T, xpp, 0, b(0)));
      } else {
        int acc = S.arrows[v].cells[0];
        for (int j = 2; j <= p; ++j)
          acc = T.h2(xp.objects[0], xp.objects[j - 1], xp.objects[j], S.arrows[v].cells[j - 1],
                     acc);
        int head = chain2_composite(T, xpp, 0, b(0));
        cell = T.h2(xpp.objects[0], xp.objects[0], xp.objects[p], acc,
                    T.id2(xpp.objects[0], xp.objects[0], head));
      }
      u.structural[{v, w}] = cell;
    }
  return u;
}

// ---------------------------------------------------------------------------
// The categorical path fibration
// ---------------------------------------------------------------------------

/// Total category of paths ending at `target`, fibered over the category of
/// simplices: the fiber over a chain is the reversed hom category from its
/// last vertex into the target object. Assembled as the Grothendieck
/// construction of hom(sup(-), target) over the reversed simplex category.
struct PathFibration {
  TwoSimplexCategory simplices;
  CatValuedLaxFunctor L;    // over the reversal of simplices.cat
  GrothendieckResult groth;
  FinCategory total;        // reversal of the Grothendieck total
  CatFunctor p;             // total -> simplices.cat
  ObjId target = 0;
  ObjId base_vertex = 0;    // the length-0 chain at the target object
  CatFunctor fiber_iso;     // fiber over base_vertex -> opposite of hom(target, target)
};

inline PathFibration path_fibration(const Fin2Category& T, ObjId c, int bound) {
  if (c < 0 || c >= T.n_objects)
    throw PreconditionError("path_fibration: no object #" + std::to_string(c));
  if (!two_cat_connected(T)) {
    auto comp = object_components2(T);
    int stray = 0;
    while (comp[stray] == comp[c]) ++stray;
    throw PreconditionError("path_fibration: disconnected input (" + T.obj_name(c) + " and " +
                            T.obj_name(stray) + " are not linked by any chain of arrows)");
  }
  PathFibration P;
  P.target = c;
  P.simplices = delta2(T, bound);
  const FinCategory& D = P.simplices.cat;
  FinCategory B0 = opposite(D);
  LaxFromCat sup = sup_lax(P.simplices);
  const int n = D.n_objects;
  P.L.base = from_category(B0);
  for (int z = 0; z < n; ++z)
    P.L.values.push_back(T.hom(P.simplices.chains[z].objects.back(), c));
  P.L.arrow_functors.resize((size_t)n * n);
  P.L.cell_transfs.resize((size_t)n * n);
  for (int z = 0; z < n; ++z)
    for (int zp = 0; zp < n; ++zp)
      for (ArrId w : B0.hom(z, zp)) {
        // w runs zp -> z in the simplex category; precompose by its image
        ObjId cz = P.simplices.chains[z].objects.back();
        ObjId czp = P.simplices.chains[zp].objects.back();
        int s = sup.one_map[w];
        CatFunctor F;
        F.source = P.L.values[z];
        F.target = P.L.values[zp];
        for (int beta = 0; beta < F.source.n_objects; ++beta)
          F.obj_map.push_back(T.h1(czp, cz, c, beta, s));
        for (int m = 0; m < F.source.arrow_count(); ++m)
          F.arr_map.push_back(T.h2(czp, cz, c, m, T.id2(czp, cz, s)));
        NatTransf t;
        for (int beta = 0; beta < F.source.n_objects; ++beta)
          t.components.push_back(F.target.identity(F.obj_map[beta]));
        P.L.cell_transfs[P.L.base.pair(z, zp)].push_back(std::move(t));
        P.L.arrow_functors[P.L.base.pair(z, zp)].push_back(std::move(F));
      }
  for (int z = 0; z < n; ++z)
    for (int zp = 0; zp < n; ++zp)
      for (int zpp = 0; zpp < n; ++zpp) {
        auto hf = B0.hom(z, zp);
        auto hg = B0.hom(zp, zpp);
        for (int gi = 0; gi < (int)hg.size(); ++gi)
          for (int fi = 0; fi < (int)hf.size(); ++fi) {
            // the reversed composite corresponds to hf[fi] after hg[gi]
            int st = lax_structural(sup, hf[fi], hg[gi]);
            ObjId cz = P.simplices.chains[z].objects.back();
            ObjId czpp = P.simplices.chains[zpp].objects.back();
            NatTransf t;
            for (int beta = 0; beta < P.L.values[z].n_objects; ++beta)
              t.components.push_back(T.h2(czpp, cz, c, T.id2(cz, c, beta), st));
            P.L.structural[{z, zp, zpp, gi, fi}] = std::move(t);
          }
      }
  P.groth = grothendieck(P.L);
  P.total = opposite(P.groth.total);
  std::vector<ArrId> back;  // base_cat arrow -> arrow of the simplex category
  for (int z = 0; z < n; ++z)
    for (int zp = 0; zp < n; ++zp)
      for (ArrId a : B0.hom(z, zp)) back.push_back(a);
  P.p.source = P.total;
  P.p.target = D;
  P.p.obj_map = P.groth.projection.obj_map;
  for (ArrId e : P.groth.projection.arr_map) P.p.arr_map.push_back(back[e]);
  for (int z = 0; z < n; ++z)
    if (P.simplices.chains[z].dim() == 0 && P.simplices.chains[z].objects[0] == c)
      P.base_vertex = z;
  auto iso = find_isomorphism(fiber_category(P.p, P.base_vertex), opposite(T.hom(c, c)));
  if (!iso)
    throw PreconditionError(
        "path_fibration: base fiber fails to match the reversed endomorphism category");
  P.fiber_iso = *iso;
  return P;
}

/// Checks the two fibration properties at every object and arrow: each fiber
/// of p is the reversed hom category out of the chain's last vertex, and
/// base change along the canonical cleavage of the underlying Grothendieck
/// projection is the assigned precomposition functor.
struct PathFiberReport {
  bool ok = true;
  std::string detail;
};

inline PathFiberReport path_fiber_check(const PathFibration& P) {
  PathFiberReport R;
  for (int z = 0; z < P.simplices.cat.n_objects; ++z) {
    FinCategory fib = fiber_category(P.p, z);
    FinCategory expect = opposite(P.L.values[z]);
    if (fib.n_objects != expect.n_objects || fib.arrow_count() != expect.arrow_count() ||
        !find_isomorphism(fib, expect)) {
      R.ok = false;
      R.detail = "fiber over " + P.simplices.cat.obj_name(z) + " is not the reversed hom";
      return R;
    }
  }
  Cleavage cl = canonical_cleavage(P.groth, P.L);
  const FinCategory& B = P.groth.base_cat;
  std::vector<int> local_of(B.arrow_count());
  {
    std::vector<int> seen((size_t)P.L.base.n_objects * P.L.base.n_objects, 0);
    for (ArrId a = 0; a < B.arrow_count(); ++a)
      local_of[a] = seen[P.L.base.pair(B.arrows[a].src, B.arrows[a].tgt)]++;
  }
  for (ArrId phi = 0; phi < B.arrow_count(); ++phi) {
    CatFunctor bc = base_change(P.groth, P.L, cl, phi);
    const CatFunctor& assigned =
        P.L.arrow_functors[P.L.base.pair(B.arrows[phi].src, B.arrows[phi].tgt)][local_of[phi]];
    if (!same_maps(bc, assigned)) {
      R.ok = false;
      R.detail = "base change along " + B.arr_name(phi) + " differs from the assigned functor";
      return R;
    }
  }
  return R;
}

// ---------------------------------------------------------------------------
// Condition Q
// ---------------------------------------------------------------------------

enum class QVerdict { certified, heuristic, refuted };

/// Precomposition by a 1-arrow f: a -> b on hom categories into c.
inline CatFunctor precompose_functor(const Fin2Category& T, ObjId a, ObjId b, int f, ObjId c) {
  CatFunctor F;
  F.source = T.hom(b, c);
  F.target = T.hom(a, c);
  for (int beta = 0; beta < F.source.n_objects; ++beta)
    F.obj_map.push_back(T.h1(a, b, c, beta, f));
  for (int m = 0; m < F.source.arrow_count(); ++m)
    F.arr_map.push_back(T.h2(a, b, c, m, T.id2(a, b, f)));
  return F;
}

/// Decides whether F looks like a homotopy equivalence of nerves. An adjoint
/// on either side certifies it; a component-map or homology mismatch refutes
/// it; otherwise the verdict stays heuristic.
inline QVerdict equivalence_verdict(const CatFunctor& F, int k_max, std::string* witness) {
  if (find_left_adjoint(F) || find_right_adjoint(F)) return QVerdict::certified;
  int p0 = component_count(F.source), p1 = component_count(F.target);
  if (p0 != p1) {
    if (witness) *witness = "pi0 " + std::to_string(p0) + " vs " + std::to_string(p1);
    return QVerdict::refuted;
  }
  std::vector<int> cs = object_components(F.source), ct = object_components(F.target);
  std::vector<int> hit(p1, 0);
  for (ObjId x = 0; x < F.source.n_objects; ++x) hit[ct[F.on_obj(x)]] = 1;
  int covered = 0;
  for (int h : hit) covered += h;
  if (covered != p1) {
    if (witness) *witness = "pi0 map is not a bijection";
    return QVerdict::refuted;
  }
  std::string rep;
  if (!homology_equal(homology(nerve(F.source, k_max + 1), k_max),
                      homology(nerve(F.target, k_max + 1), k_max), k_max, &rep)) {
    if (witness) *witness = rep;
    return QVerdict::refuted;
  }
  return QVerdict::heuristic;
}

struct QArrowRecord {
  ObjId src = 0, tgt = 0;
  int arrow = 0;
  std::string label;
  QVerdict verdict = QVerdict::heuristic;
  std::string witness;
};

struct QReport {
  ObjId at = 0;
  std::vector<QArrowRecord> records;
  bool holds() const {
    for (const auto& r : records)
      if (r.verdict == QVerdict::refuted) return false;
    return true;
  }
  bool certified() const {
    for (const auto& r : records)
      if (r.verdict != QVerdict::certified) return false;
    return true;
  }
  std::string to_string() const {
    std::string s;
    if (!holds()) {
      s = "condition Q does not hold\n";
      for (const auto& r : records)
        if (r.verdict == QVerdict::refuted)
          s += "  at arrow " + r.label + ": " + r.witness + "\n";
    } else if (certified()) {
      s = "condition Q holds (certified at every arrow)\n";
    } else {
      s = "condition Q holds up to the computed invariants\n";
      for (const auto& r : records)
        if (r.verdict == QVerdict::heuristic) s += "  not certified at arrow " + r.label + "\n";
    }
    return s;
  }
};

/// Condition Q at the object c: precomposition by every non-identity
/// 1-arrow must be a homotopy equivalence between the hom categories into c.
inline QReport condition_q(const Fin2Category& T, ObjId c, int k_max = 2) {
  QReport R;
  R.at = c;
  for (ObjId a = 0; a < T.n_objects; ++a)
    for (ObjId b = 0; b < T.n_objects; ++b)
      for (int f = 0; f < T.n1(a, b); ++f) {
        if (a == b && f == T.id1[a]) continue;
        QArrowRecord rec;
        rec.src = a;
        rec.tgt = b;
        rec.arrow = f;
        rec.label = T.one_name(a, b, f);
        rec.verdict = equivalence_verdict(precompose_functor(T, a, b, f, c), k_max, &rec.witness);
        R.records.push_back(std::move(rec));
      }
  return R;
}

// ---------------------------------------------------------------------------
// Loop space consistency
// ---------------------------------------------------------------------------

enum class MatchVerdict { passed, failed, undetermined };

/// Compares the endomorphism category at c with the based loops of the
/// geometric nerve: components of hom(c, c) against the order of the
/// fundamental group at vertex c.
struct LoopReport {
  ObjId at = 0;
  int loop_pi0 = 0;
  HomologySummary loop_homology;
  Pi1Result pi1;
  MatchVerdict order_match = MatchVerdict::undetermined;
  MatchVerdict h0_match = MatchVerdict::undetermined;  // H_0 rank vs component count
  QReport q;
  std::string to_string() const {
    std::string s = "pi0 of the endomorphism category: " + std::to_string(loop_pi0) + "\n";
    if (pi1.order_known)
      s += "pi1 of the geometric nerve: order " + std::to_string(pi1.order) + "\n";
    else if (pi1.certified_infinite)
      s += "pi1 of the geometric nerve: infinite\n";
    else
      s += "pi1 of the geometric nerve: undecided within budget\n";
    s += std::string("order comparison: ") +
         (order_match == MatchVerdict::passed     ? "passed"
          : order_match == MatchVerdict::failed   ? "failed"
                                                  : "undetermined") +
         "\n";
    s += std::string("H0 rank vs component count: ") +
         (h0_match == MatchVerdict::passed ? "passed" : "failed") + "\n";
    return s + q.to_string();
  }
};

inline LoopReport loop_consistency(const Fin2Category& T, ObjId c, int N = 3, int k_max = 2,
                                   int coset_budget = 10000, long long budget = 5000000) {
  if (N < 2) throw PreconditionError("loop_consistency: truncation must be at least 2");
  if (c < 0 || c >= T.n_objects)
    throw PreconditionError("loop_consistency: no object #" + std::to_string(c));
  if (!two_cat_connected(T)) {
    auto comp = object_components2(T);
    int stray = 0;
    while (comp[stray] == comp[c]) ++stray;
    throw PreconditionError("loop_consistency: disconnected input (" + T.obj_name(c) + " and " +
                            T.obj_name(stray) + " are not linked by any chain of arrows)");
  }
  LoopReport R;
  R.at = c;
  const FinCategory& H = T.hom(c, c);
  R.loop_pi0 = component_count(H);
  R.loop_homology = homology(nerve(H, k_max + 1), k_max);
  R.h0_match = (R.loop_homology.degrees[0].betti == R.loop_pi0 &&
                R.loop_homology.degrees[0].torsion.empty())
                   ? MatchVerdict::passed
                   : MatchVerdict::failed;
  R.pi1 = pi1(geometric_nerve(T, N, budget), c, coset_budget);
  if (R.pi1.order_known)
    R.order_match = (R.pi1.order == R.loop_pi0) ? MatchVerdict::passed : MatchVerdict::failed;
  else if (R.pi1.certified_infinite)
    R.order_match = MatchVerdict::failed;
  else
    R.order_match = MatchVerdict::undetermined;
  R.q = condition_q(T, c, k_max);
  return R;
}

// ---------------------------------------------------------------------------
// Delooping criteria for a strict monoidal category
// ---------------------------------------------------------------------------

/// Verdicts for a strict monoidal category (M, tensor, unit): whether the
/// component monoid is a group, whether the translations by each object are
/// homotopy equivalences, and (when the group test passes) the loop space
/// comparison on the one-object delooping.
struct DeloopReport {
  bool group = false;
  std::string group_witness;
  std::vector<QVerdict> left_translations;   // per object x: x tensor -
  std::vector<QVerdict> right_translations;  // per object x: - tensor x
  std::optional<LoopReport> loop;
  bool translations_ok() const {
    for (QVerdict v : left_translations)
      if (v == QVerdict::refuted) return false;
    for (QVerdict v : right_translations)
      if (v == QVerdict::refuted) return false;
    return true;
  }
};

inline DeloopReport deloop_check(const FinCategory& M, const std::vector<std::vector<int>>& t_obj,
                                 const std::vector<std::vector<int>>& t_arr, ObjId unit,
                                 int k_max = 2, int N = 3, int coset_budget = 10000,
                                 long long budget = 5000000) {
  Fin2Category T = from_monoidal(M, t_obj, t_arr, unit);  // validates the monoidal data
  DeloopReport R;
  std::vector<int> comp = object_components(M);
  int k = component_count(M);
  std::vector<int> rep(k, -1);
  for (ObjId x = 0; x < M.n_objects; ++x)
    if (rep[comp[x]] < 0) rep[comp[x]] = x;
  int e = comp[unit];
  R.group = true;
  for (int u = 0; u < k && R.group; ++u) {
    bool inv = false;
    for (int v = 0; v < k && !inv; ++v)
      inv = comp[t_obj[rep[u]][rep[v]]] == e && comp[t_obj[rep[v]][rep[u]]] == e;
    if (!inv) {
      R.group = false;
      R.group_witness = "component of " + M.obj_name(rep[u]) + " has no inverse";
    }
  }
  for (ObjId x = 0; x < M.n_objects; ++x) {
    CatFunctor lx, rx;
    lx.source = rx.source = M;
    lx.target = rx.target = M;
    for (ObjId y = 0; y < M.n_objects; ++y) {
      lx.obj_map.push_back(t_obj[x][y]);
      rx.obj_map.push_back(t_obj[y][x]);
    }
    for (ArrId m = 0; m < M.arrow_count(); ++m) {
      lx.arr_map.push_back(t_arr[M.identity(x)][m]);
      rx.arr_map.push_back(t_arr[m][M.identity(x)]);
    }
    R.left_translations.push_back(equivalence_verdict(lx, k_max, nullptr));
    R.right_translations.push_back(equivalence_verdict(rx, k_max, nullptr));
  }
  if (R.group) R.loop = loop_consistency(T, 0, N, k_max, coset_budget, budget);
  return R;
}

}  // namespace fincat

#endif
