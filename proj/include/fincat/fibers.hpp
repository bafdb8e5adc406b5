#ifndef FINCAT_FIBERS_HPP
#define FINCAT_FIBERS_HPP

#include <algorithm>
#include <map>

#include "fincat/twocat.hpp"

namespace fincat {

// ---------------------------------------------------------------------------
// Comma categories and fibers of a functor
// ---------------------------------------------------------------------------

/// A comma category together with the data identifying its parts: objects
/// are (a, f) pairs, arrows are carried by arrows of the source of u.
struct CommaCategory {
  FinCategory cat;
  std::vector<std::pair<ObjId, ArrId>> objects;  // (object of A, arrow of B)
  std::vector<ArrId> carrier;                    // per comma arrow, the A-arrow
  CatFunctor projection;                         // to A
};

namespace detail {

/// Shared builder: objects are pairs (a, f) filtered by `admits`, an arrow
/// (a, f) -> (a', f') is any g: a -> a' with `square(g, f, f')`.
template <class Admit, class Square>
CommaCategory comma_build(const FinCategory& A, const FinCategory& B, Admit admits,
                          Square square) {
  CommaCategory K;
  for (ObjId a = 0; a < A.n_objects; ++a)
    for (ArrId f = 0; f < B.arrow_count(); ++f)
      if (admits(a, f)) {
        K.objects.push_back({a, f});
        K.cat.obj_names.push_back("(" + A.obj_name(a) + ", " + B.arr_name(f) + ")");
      }
  K.cat.n_objects = (int)K.objects.size();
  std::map<std::tuple<int, int, ArrId>, ArrId> lookup;
  for (int s = 0; s < K.cat.n_objects; ++s)
    for (int t = 0; t < K.cat.n_objects; ++t) {
      auto [a, f] = K.objects[s];
      auto [ap, fp] = K.objects[t];
      for (ArrId g : A.hom(a, ap))
        if (square(g, f, fp)) {
          lookup[{s, t, g}] = (ArrId)K.carrier.size();
          K.cat.arrows.push_back({s, t, s == t && A.is_identity(g)});
          K.cat.arr_names.push_back(A.arr_name(g) + "@" + std::to_string(s));
          K.carrier.push_back(g);
        }
    }
  K.cat.finalize();
  for (ArrId v = 0; v < K.cat.arrow_count(); ++v)
    for (ArrId w = 0; w < K.cat.arrow_count(); ++w)
      if (K.cat.composable(v, w))
        K.cat.set_comp(v, w,
                       lookup.at({K.cat.arrows[w].src, K.cat.arrows[v].tgt,
                                  A.comp_at(K.carrier[v], K.carrier[w])}));
  K.projection.source = K.cat;
  K.projection.target = A;
  for (auto& [a, f] : K.objects) K.projection.obj_map.push_back(a);
  K.projection.arr_map = K.carrier;
  return K;
}

}  // namespace detail

/// u/d: objects (a, f: u(a) -> d), arrows g with f' . u(g) = f.
inline CommaCategory comma_over(const CatFunctor& u, ObjId d) {
  const FinCategory& B = u.target;
  return detail::comma_build(
      u.source, B,
      [&](ObjId a, ArrId f) { return B.arrows[f].src == u.on_obj(a) && B.arrows[f].tgt == d; },
      [&](ArrId g, ArrId f, ArrId fp) { return B.comp_at(fp, u.on_arr(g)) == f; });
}

/// d/u: objects (a, f: d -> u(a)), arrows g with u(g) . f = f'.
inline CommaCategory comma_under(ObjId d, const CatFunctor& u) {
  const FinCategory& B = u.target;
  return detail::comma_build(
      u.source, B,
      [&](ObjId a, ArrId f) { return B.arrows[f].src == d && B.arrows[f].tgt == u.on_obj(a); },
      [&](ArrId g, ArrId f, ArrId fp) { return B.comp_at(u.on_arr(g), f) == fp; });
}

inline std::optional<ObjId> find_initial(const FinCategory& C) {
  for (ObjId c = 0; c < C.n_objects; ++c) {
    bool ok = true;
    for (ObjId d = 0; d < C.n_objects && ok; ++d) ok = C.hom(c, d).size() == 1;
    if (ok) return c;
  }
  return std::nullopt;
}

inline std::optional<ObjId> find_terminal(const FinCategory& C) {
  for (ObjId c = 0; c < C.n_objects; ++c) {
    bool ok = true;
    for (ObjId d = 0; d < C.n_objects && ok; ++d) ok = C.hom(d, c).size() == 1;
    if (ok) return c;
  }
  return std::nullopt;
}

/// The full subcategory of the source of p lying over b and id_b. Optional
/// out-parameters recover the original object and arrow ids.
inline FinCategory fiber_category(const CatFunctor& p, ObjId b,
                                  std::vector<ObjId>* obj_back = nullptr,
                                  std::vector<ArrId>* arr_back = nullptr) {
  const FinCategory& E = p.source;
  FinCategory F;
  std::vector<int> obj_of(E.n_objects, -1);
  std::vector<ObjId> objs;
  for (ObjId e = 0; e < E.n_objects; ++e)
    if (p.on_obj(e) == b) {
      obj_of[e] = F.n_objects++;
      objs.push_back(e);
      F.obj_names.push_back(E.obj_name(e));
    }
  std::vector<int> arr_of(E.arrow_count(), -1);
  std::vector<ArrId> arrs;
  for (ArrId g = 0; g < E.arrow_count(); ++g) {
    if (obj_of[E.arrows[g].src] < 0 || obj_of[E.arrows[g].tgt] < 0) continue;
    if (p.on_arr(g) != p.target.identity(b)) continue;
    arr_of[g] = (int)arrs.size();
    arrs.push_back(g);
    F.arrows.push_back({obj_of[E.arrows[g].src], obj_of[E.arrows[g].tgt], E.is_identity(g)});
    F.arr_names.push_back(E.arr_name(g));
  }
  F.finalize();
  for (size_t v = 0; v < arrs.size(); ++v)
    for (size_t w = 0; w < arrs.size(); ++w)
      if (F.composable((ArrId)v, (ArrId)w))
        F.set_comp((ArrId)v, (ArrId)w, arr_of[E.comp_at(arrs[v], arrs[w])]);
  if (obj_back) *obj_back = objs;
  if (arr_back) *arr_back = arrs;
  return F;
}

// ---------------------------------------------------------------------------
// Adjoint search
// ---------------------------------------------------------------------------

struct Adjunction {
  CatFunctor left;
  CatFunctor right;
  NatTransf unit;    // Id => right . left, components indexed by the source of left
  NatTransf counit;  // left . right => Id, components indexed by the source of right
};

/// Left adjoint of F: A -> B, found pointwise: L(b) must be an initial
/// object of b/F. Returns nullopt when some comma category has no initial
/// object or a verification step fails.
inline std::optional<Adjunction> find_left_adjoint(const CatFunctor& F) {
  const FinCategory& A = F.source;
  const FinCategory& B = F.target;
  Adjunction adj;
  adj.right = F;
  adj.left.source = B;
  adj.left.target = A;
  adj.unit.components.resize(B.n_objects);
  for (ObjId b = 0; b < B.n_objects; ++b) {
    CommaCategory K = comma_under(b, F);
    auto init = find_initial(K.cat);
    if (!init) return std::nullopt;
    adj.left.obj_map.push_back(K.objects[*init].first);
    adj.unit.components[b] = K.objects[*init].second;
  }
  for (ArrId beta = 0; beta < B.arrow_count(); ++beta) {
    ObjId b = B.arrows[beta].src, bp = B.arrows[beta].tgt;
    int found = -1;
    for (ArrId g : A.hom(adj.left.obj_map[b], adj.left.obj_map[bp]))
      if (B.comp_at(F.on_arr(g), adj.unit.components[b]) ==
          B.comp_at(adj.unit.components[bp], beta)) {
        if (found >= 0) return std::nullopt;
        found = g;
      }
    if (found < 0) return std::nullopt;
    adj.left.arr_map.push_back(found);
  }
  adj.counit.components.resize(A.n_objects);
  for (ObjId a = 0; a < A.n_objects; ++a) {
    ObjId la = adj.left.obj_map[F.on_obj(a)];
    int found = -1;
    for (ArrId e : A.hom(la, a))
      if (B.comp_at(F.on_arr(e), adj.unit.components[F.on_obj(a)]) == B.identity(F.on_obj(a))) {
        if (found >= 0) return std::nullopt;
        found = e;
      }
    if (found < 0) return std::nullopt;
    adj.counit.components[a] = found;
  }
  if (!validate_functor(adj.left).ok()) return std::nullopt;
  if (!validate_nat(identity_functor(B), compose_functors(F, adj.left), adj.unit).ok())
    return std::nullopt;
  if (!validate_nat(compose_functors(adj.left, F), identity_functor(A), adj.counit).ok())
    return std::nullopt;
  for (ObjId b = 0; b < B.n_objects; ++b)  // triangle on the left leg
    if (A.comp_at(adj.counit.components[adj.left.obj_map[b]],
                  adj.left.on_arr(adj.unit.components[b])) != A.identity(adj.left.obj_map[b]))
      return std::nullopt;
  return adj;
}

/// Right adjoint of F: A -> B via terminal objects of F/b.
inline std::optional<Adjunction> find_right_adjoint(const CatFunctor& F) {
  const FinCategory& A = F.source;
  const FinCategory& B = F.target;
  Adjunction adj;
  adj.left = F;
  adj.right.source = B;
  adj.right.target = A;
  adj.counit.components.resize(B.n_objects);
  for (ObjId b = 0; b < B.n_objects; ++b) {
    CommaCategory K = comma_over(F, b);
    auto term = find_terminal(K.cat);
    if (!term) return std::nullopt;
    adj.right.obj_map.push_back(K.objects[*term].first);
    adj.counit.components[b] = K.objects[*term].second;
  }
  for (ArrId beta = 0; beta < B.arrow_count(); ++beta) {
    ObjId b = B.arrows[beta].src, bp = B.arrows[beta].tgt;
    int found = -1;
    for (ArrId g : A.hom(adj.right.obj_map[b], adj.right.obj_map[bp]))
      if (B.comp_at(adj.counit.components[bp], F.on_arr(g)) ==
          B.comp_at(beta, adj.counit.components[b])) {
        if (found >= 0) return std::nullopt;
        found = g;
      }
    if (found < 0) return std::nullopt;
    adj.right.arr_map.push_back(found);
  }
  adj.unit.components.resize(A.n_objects);
  for (ObjId a = 0; a < A.n_objects; ++a) {
    ObjId ra = adj.right.obj_map[F.on_obj(a)];
    int found = -1;
    for (ArrId e : A.hom(a, ra))
      if (B.comp_at(adj.counit.components[F.on_obj(a)], F.on_arr(e)) == B.identity(F.on_obj(a))) {
        if (found >= 0) return std::nullopt;
        found = e;
      }
    if (found < 0) return std::nullopt;
    adj.unit.components[a] = found;
  }
  if (!validate_functor(adj.right).ok()) return std::nullopt;
  if (!validate_nat(identity_functor(A), compose_functors(adj.right, F), adj.unit).ok())
    return std::nullopt;
  if (!validate_nat(compose_functors(F, adj.right), identity_functor(B), adj.counit).ok())
    return std::nullopt;
  for (ObjId b = 0; b < B.n_objects; ++b)  // triangle on the right leg
    if (A.comp_at(adj.right.on_arr(adj.counit.components[b]),
                  adj.unit.components[adj.right.obj_map[b]]) != A.identity(adj.right.obj_map[b]))
      return std::nullopt;
  return adj;
}

/// A choice of lifts: for an object e of the total category and an arrow
/// phi out of its image downstairs, a distinguished arrow over phi from e.
struct Cleavage {
  std::map<std::pair<ObjId, ArrId>, ArrId> lift;  // (total object, base arrow) -> total arrow
};

/// p: E -> B is a prefibration (in the pushforward sense) when, for every
/// base object b, the inclusion of the fiber into p/b has a left adjoint.
/// On success the adjunction units assemble into a cleavage.
struct PrefibrationReport {
  bool ok = true;
  std::vector<ObjId> failing;  // base objects without the adjoint
  Cleavage cleavage;           // filled only over the bases where the adjoint exists
};

inline PrefibrationReport check_prefibration(const CatFunctor& p) {
  PrefibrationReport R;
  for (ObjId b = 0; b < p.target.n_objects; ++b) {
    std::vector<ObjId> objs;
    std::vector<ArrId> arrs;
    FinCategory Fb = fiber_category(p, b, &objs, &arrs);
    CommaCategory K = comma_over(p, b);
    std::map<std::pair<ObjId, ArrId>, int> obj_at;
    for (int i = 0; i < K.cat.n_objects; ++i) obj_at[K.objects[i]] = i;
    std::map<std::tuple<int, int, ArrId>, ArrId> arr_at;
    for (ArrId v = 0; v < K.cat.arrow_count(); ++v)
      arr_at[{K.cat.arrows[v].src, K.cat.arrows[v].tgt, K.carrier[v]}] = v;
    CatFunctor incl;
    incl.source = Fb;
    incl.target = K.cat;
    for (ObjId e : objs) incl.obj_map.push_back(obj_at.at({e, p.target.identity(b)}));
    for (size_t g = 0; g < arrs.size(); ++g)
      incl.arr_map.push_back(arr_at.at(
          {incl.obj_map[Fb.arrows[g].src], incl.obj_map[Fb.arrows[g].tgt], arrs[g]}));
    auto adj = find_left_adjoint(incl);
    if (!adj) {
      R.ok = false;
      R.failing.push_back(b);
      continue;
    }
    // The unit at a comma object (e, phi: p(e) -> b) is an arrow of p/b
    // into the fiber; its carrier is the chosen lift of phi at e.
    for (int k = 0; k < K.cat.n_objects; ++k)
      R.cleavage.lift[K.objects[k]] = K.carrier[adj->unit.components[k]];
  }
  return R;
}

/// Pushforward between fibers along psi: b -> b' through a cleavage. Sends
/// e over b to the target of its lift, and an arrow g to the unique fiber
/// arrow h with h . lift(src) = lift(tgt) . g in the total category.
inline CatFunctor base_change(const CatFunctor& p, const Cleavage& cl, ArrId psi) {
  ObjId b = p.target.arrows[psi].src;
  ObjId bp = p.target.arrows[psi].tgt;
  std::vector<ObjId> objs, objsp;
  std::vector<ArrId> arrs, arrsp;
  CatFunctor F;
  F.source = fiber_category(p, b, &objs, &arrs);
  F.target = fiber_category(p, bp, &objsp, &arrsp);
  std::map<ObjId, int> idx;
  for (int i = 0; i < (int)objsp.size(); ++i) idx[objsp[i]] = i;
  std::vector<ArrId> lifted;  // per fiber object over b, its lift along psi
  for (ObjId e : objs) {
    auto it = cl.lift.find({e, psi});
    if (it == cl.lift.end())
      throw PreconditionError("base_change: cleavage has no lift of " +
                              p.target.arr_name(psi) + " at " + p.source.obj_name(e));
    lifted.push_back(it->second);
    F.obj_map.push_back(idx.at(p.source.arrows[it->second].tgt));
  }
  for (size_t g = 0; g < arrs.size(); ++g) {
    ObjId s = p.source.arrows[arrs[g]].src, t = p.source.arrows[arrs[g]].tgt;
    int is = (int)(std::find(objs.begin(), objs.end(), s) - objs.begin());
    int it = (int)(std::find(objs.begin(), objs.end(), t) - objs.begin());
    ArrId want = p.source.comp_at(lifted[it], arrs[g]);
    int found = -1;
    for (size_t h = 0; h < arrsp.size() && found < 0; ++h)
      if (F.target.arrows[h].src == F.obj_map[is] && F.target.arrows[h].tgt == F.obj_map[it] &&
          p.source.comp_at(arrsp[h], lifted[is]) == want)
        found = (int)h;
    if (found < 0)
      throw PreconditionError("base_change: no fiber arrow closes the lift square at " +
                              p.source.arr_name(arrs[g]));
    F.arr_map.push_back(found);
  }
  return F;
}

// ---------------------------------------------------------------------------
// Grothendieck construction
// ---------------------------------------------------------------------------

/// The underlying 1-category of a 2-category with discrete homs.
inline FinCategory underlying_category(const Fin2Category& T) {
  FinCategory C;
  C.n_objects = T.n_objects;
  C.obj_names = T.obj_names;
  std::vector<std::vector<int>> global((size_t)T.n_objects * T.n_objects);
  for (ObjId c = 0; c < T.n_objects; ++c)
    for (ObjId d = 0; d < T.n_objects; ++d) {
      const FinCategory& H = T.hom(c, d);
      if (H.arrow_count() != H.n_objects)
        throw PreconditionError("underlying_category: hom categories must be discrete");
      for (int f = 0; f < H.n_objects; ++f) {
        global[T.pair(c, d)].push_back(C.arrow_count());
        C.arrows.push_back({c, d, c == d && f == T.id1[c]});
        C.arr_names.push_back(T.one_name(c, d, f));
      }
    }
  C.finalize();
  for (ObjId c = 0; c < T.n_objects; ++c)
    for (ObjId d = 0; d < T.n_objects; ++d)
      for (ObjId e = 0; e < T.n_objects; ++e)
        for (int g = 0; g < T.n1(d, e); ++g)
          for (int f = 0; f < T.n1(c, d); ++f)
            C.set_comp(global[T.pair(d, e)][g], global[T.pair(c, d)][f],
                       global[T.pair(c, e)][T.h1(c, d, e, g, f)]);
  return C;
}

/// Total category of a normal lax functor into Cat over a 1-categorical
/// base: objects (x, b) with x in F(b), arrows (f, phi): (x, b) -> (x', b')
/// with phi: b -> b' and f: F(phi)(x) -> x'; composition inserts the
/// structural component.
struct GrothendieckResult {
  FinCategory total;
  std::vector<std::pair<int, ObjId>> objects;  // (fiber object, base object)
  struct ArrowData {
    ArrId phi;    // base arrow (in the extracted 1-category)
    ArrId fib;    // arrow of the target fiber
  };
  std::vector<ArrowData> arrows;
  FinCategory base_cat;
  CatFunctor projection;  // total -> base_cat
};

inline GrothendieckResult grothendieck(const CatValuedLaxFunctor& F) {
  const Fin2Category& B2 = F.base;
  GrothendieckResult G;
  G.base_cat = underlying_category(B2);
  const FinCategory& B = G.base_cat;
  // local 1-arrow index behind each base arrow
  std::vector<int> local_of(B.arrow_count());
  {
    std::vector<int> seen((size_t)B2.n_objects * B2.n_objects, 0);
    for (ArrId a = 0; a < B.arrow_count(); ++a)
      local_of[a] = seen[B2.pair(B.arrows[a].src, B.arrows[a].tgt)]++;
  }
  auto functor_of = [&](ArrId phi) -> const CatFunctor& {
    return F.arrow_functors[B2.pair(B.arrows[phi].src, B.arrows[phi].tgt)][local_of[phi]];
  };
  std::vector<int> offset(B.n_objects);
  for (ObjId b = 0; b < B.n_objects; ++b) {
    offset[b] = (int)G.objects.size();
    for (int x = 0; x < F.values[b].n_objects; ++x) {
      G.objects.push_back({x, b});
      G.total.obj_names.push_back("(" + F.values[b].obj_name(x) + ", " + B.obj_name(b) + ")");
    }
  }
  G.total.n_objects = (int)G.objects.size();
  std::map<std::tuple<int, ArrId, ArrId>, ArrId> lookup;  // (src total, phi, fib)
  for (ArrId phi = 0; phi < B.arrow_count(); ++phi) {
    ObjId b = B.arrows[phi].src, bp = B.arrows[phi].tgt;
    const CatFunctor& Fphi = functor_of(phi);
    const FinCategory& fib = F.values[bp];
    for (int x = 0; x < F.values[b].n_objects; ++x)
      for (ArrId f = 0; f < fib.arrow_count(); ++f) {
        if (fib.arrows[f].src != Fphi.on_obj(x)) continue;
        int s = offset[b] + x, t = offset[bp] + fib.arrows[f].tgt;
        lookup[{s, phi, f}] = (ArrId)G.arrows.size();
        G.total.arrows.push_back(
            {s, t, s == t && B.is_identity(phi) && fib.is_identity(f)});
        G.total.arr_names.push_back("(" + fib.arr_name(f) + ", " + B.arr_name(phi) + ")");
        G.arrows.push_back({phi, f});
      }
  }
  G.total.finalize();
  for (ArrId v = 0; v < G.total.arrow_count(); ++v)
    for (ArrId w = 0; w < G.total.arrow_count(); ++w) {
      if (!G.total.composable(v, w)) continue;
      // w: (x,b) -> (x',b') over phi, v: (x',b') -> (x'',b'') over psi
      ArrId phi = G.arrows[w].phi, psi = G.arrows[v].phi;
      ObjId b = B.arrows[phi].src;
      ObjId bpp = B.arrows[psi].tgt;
      const FinCategory& fib = F.values[bpp];
      int x = G.objects[G.total.arrows[w].src].first;
      ArrId comp_base = B.comp_at(psi, phi);
      // structural component at x, then the pushed first arrow, then the second
      const NatTransf& st = F.structural_at(b, B.arrows[phi].tgt, bpp, local_of[psi], local_of[phi]);
      ArrId f = fib.comp_at(G.arrows[v].fib, fib.comp_at(functor_of(psi).on_arr(G.arrows[w].fib),
                                                         st.components[x]));
      G.total.set_comp(v, w, lookup.at({G.total.arrows[w].src, comp_base, f}));
    }
  G.projection.source = G.total;
  G.projection.target = B;
  for (auto& [x, b] : G.objects) G.projection.obj_map.push_back(b);
  for (auto& a : G.arrows) G.projection.arr_map.push_back(a.phi);
  return G;
}

/// The canonical cleavage: over phi: b -> b', the object (x, b) lifts along
/// the arrow (id, phi) to (F(phi)x, b').
inline Cleavage canonical_cleavage(const GrothendieckResult& G, const CatValuedLaxFunctor& F) {
  Cleavage cl;
  const FinCategory& B = G.base_cat;
  std::vector<int> local_of(B.arrow_count());
  {
    std::vector<int> seen((size_t)F.base.n_objects * F.base.n_objects, 0);
    for (ArrId a = 0; a < B.arrow_count(); ++a)
      local_of[a] = seen[F.base.pair(B.arrows[a].src, B.arrows[a].tgt)]++;
  }
  std::map<std::tuple<int, ArrId, ArrId>, ArrId> lookup;
  for (ArrId v = 0; v < G.total.arrow_count(); ++v)
    lookup[{G.total.arrows[v].src, G.arrows[v].phi, G.arrows[v].fib}] = v;
  for (int e = 0; e < G.total.n_objects; ++e) {
    auto [x, b] = G.objects[e];
    for (ArrId phi = 0; phi < B.arrow_count(); ++phi) {
      if (B.arrows[phi].src != b) continue;
      ObjId bp = B.arrows[phi].tgt;
      const CatFunctor& Fphi =
          F.arrow_functors[F.base.pair(b, bp)][local_of[phi]];
      cl.lift[{e, phi}] = lookup.at({e, phi, F.values[bp].identity(Fphi.on_obj(x))});
    }
  }
  return cl;
}

/// Pushforward along phi: b -> b' induced by a cleavage, expressed directly
/// between the fiber values: x goes to the target of its lift, an arrow g of
/// F(b) to the unique fiber arrow closing the square of lifts.
inline CatFunctor base_change(const GrothendieckResult& G, const CatValuedLaxFunctor& F,
                              const Cleavage& cl, ArrId phi) {
  const FinCategory& B = G.base_cat;
  ObjId b = B.arrows[phi].src, bp = B.arrows[phi].tgt;
  CatFunctor out;
  out.source = F.values[b];
  out.target = F.values[bp];
  std::vector<int> offset(B.n_objects, -1);
  for (int e = 0; e < G.total.n_objects; ++e)
    if (offset[G.objects[e].second] < 0) offset[G.objects[e].second] = e;
  for (int x = 0; x < F.values[b].n_objects; ++x) {
    ArrId l = cl.lift.at({offset[b] + x, phi});
    out.obj_map.push_back(G.objects[G.total.arrows[l].tgt].first);
  }
  for (ArrId g = 0; g < F.values[b].arrow_count(); ++g) {
    // total-category arrow over id_b carrying g
    int sx = F.values[b].arrows[g].src, tx = F.values[b].arrows[g].tgt;
    ArrId lift_s = cl.lift.at({offset[b] + sx, phi});
    ArrId lift_t = cl.lift.at({offset[b] + tx, phi});
    ArrId g_total = -1;
    for (ArrId v = 0; v < G.total.arrow_count(); ++v)
      if (G.arrows[v].phi == B.identity(b) && G.arrows[v].fib == g &&
          G.total.arrows[v].src == offset[b] + sx) {
        g_total = v;
        break;
      }
    ArrId want = G.total.comp_at(lift_t, g_total);
    int found = -1;
    for (ArrId h = 0; h < F.values[bp].arrow_count(); ++h) {
      if (F.values[bp].arrows[h].src != out.obj_map[sx]) continue;
      // candidate fiber arrow over id_{b'} after the source lift
      ArrId h_total = -1;
      for (ArrId v = 0; v < G.total.arrow_count(); ++v)
        if (G.arrows[v].phi == B.identity(bp) && G.arrows[v].fib == h &&
            G.total.arrows[v].src == G.total.arrows[lift_s].tgt) {
          h_total = v;
          break;
        }
      if (h_total >= 0 && G.total.comp_at(h_total, lift_s) == want) {
        found = h;
        break;
      }
    }
    if (found < 0) throw PreconditionError("base_change: no arrow closes the lift square");
    out.arr_map.push_back(found);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homotopy fibers of a lax functor out of a category
// ---------------------------------------------------------------------------

/// u//d for a normal lax functor u: C -> D and an object d of D. Objects are
/// pairs (c, phi: u(c) -> d); an arrow (c, phi) -> (c', phi') is a C-arrow
/// f together with a 2-cell phi' . u(f) => phi. Composing inserts the
/// structural cell of u before stacking the two 2-cells.
struct HomotopyFiber {
  FinCategory cat;
  std::vector<std::pair<ObjId, int>> objects;  // (c, local 1-arrow u(c) -> d)
  struct ArrowData {
    ArrId f;    // the C-arrow
    int alpha;  // 2-cell in D.hom(u(src), d)
  };
  std::vector<ArrowData> arrows;
  CatFunctor projection;  // to C
};

namespace detail {

template <class Structural>
HomotopyFiber homotopy_fiber_build(const LaxFromCat& u, ObjId d, Structural structural) {
  const FinCategory& C = u.source;
  const Fin2Category& D = u.target;
  HomotopyFiber H;
  std::vector<int> offset(C.n_objects);
  for (ObjId c = 0; c < C.n_objects; ++c) {
    offset[c] = (int)H.objects.size();
    for (int phi = 0; phi < D.n1(u.obj_map[c], d); ++phi) {
      H.objects.push_back({c, phi});
      H.cat.obj_names.push_back("(" + C.obj_name(c) + ", " +
                                D.one_name(u.obj_map[c], d, phi) + ")");
    }
  }
  H.cat.n_objects = (int)H.objects.size();
  std::map<std::tuple<int, int, ArrId, int>, ArrId> lookup;  // (src, tgt, f, alpha)
  for (int s = 0; s < H.cat.n_objects; ++s)
    for (int t = 0; t < H.cat.n_objects; ++t) {
      auto [c, phi] = H.objects[s];
      auto [cp, phip] = H.objects[t];
      ObjId uc = u.obj_map[c], ucp = u.obj_map[cp];
      const FinCategory& hom = D.hom(uc, d);
      for (ArrId f : C.hom(c, cp)) {
        int src1 = D.h1(uc, ucp, d, phip, u.one_map[f]);
        for (int alpha = 0; alpha < hom.arrow_count(); ++alpha) {
          if (hom.arrows[alpha].src != src1 || hom.arrows[alpha].tgt != phi) continue;
          lookup[{s, t, f, alpha}] = (ArrId)H.arrows.size();
          H.cat.arrows.push_back(
              {s, t, s == t && C.is_identity(f) && alpha == hom.identity(phi)});
          H.cat.arr_names.push_back("(" + C.arr_name(f) + ", " + hom.arr_name(alpha) + ")");
          H.arrows.push_back({f, alpha});
        }
      }
    }
  H.cat.finalize();
  for (ArrId v = 0; v < H.cat.arrow_count(); ++v)
    for (ArrId w = 0; w < H.cat.arrow_count(); ++w) {
      if (!H.cat.composable(v, w)) continue;
      // w: (c,phi) -> (c',phi') with (f, alpha); v: (c',phi') -> (c'',phi'') with (g, beta)
      ObjId c = H.objects[H.cat.arrows[w].src].first;
      auto [cpp, phipp] = H.objects[H.cat.arrows[v].tgt];
      ObjId cp = H.objects[H.cat.arrows[w].tgt].first;
      ObjId uc = u.obj_map[c], ucp = u.obj_map[cp];
      ArrId f = H.arrows[w].f, g = H.arrows[v].f;
      const FinCategory& hom = D.hom(uc, d);
      // whisker beta by u(f), stack alpha on top, then (lax case) feed the
      // structural comparison cell in first
      int step = D.h2(uc, ucp, d, H.arrows[v].alpha, D.id2(uc, ucp, u.one_map[f]));
      int gamma = hom.comp_at(H.arrows[w].alpha, step);
      int pre = structural(c, cp, cpp, phipp, g, f);
      if (pre >= 0) gamma = hom.comp_at(gamma, pre);
      H.cat.set_comp(v, w, lookup.at({H.cat.arrows[w].src, H.cat.arrows[v].tgt,
                                      C.comp_at(g, f), gamma}));
    }
  H.projection.source = H.cat;
  H.projection.target = C;
  for (auto& [c, phi] : H.objects) H.projection.obj_map.push_back(c);
  for (auto& a : H.arrows) H.projection.arr_map.push_back(a.f);
  return H;
}

}  // namespace detail

/// Homotopy fiber of a normal lax functor, structural cells included.
inline HomotopyFiber homotopy_fiber_lax(const LaxFromCat& u, ObjId d) {
  const Fin2Category& D = u.target;
  return detail::homotopy_fiber_build(
      u, d, [&](ObjId c, ObjId, ObjId cpp, int phipp, ArrId g, ArrId f) -> int {
        ObjId uc = u.obj_map[c], ucpp = u.obj_map[cpp];
        // whisker the structural cell u(gf) => u(g).u(f) by phi'' on the left
        return D.h2(uc, ucpp, d, D.id2(ucpp, d, phipp), lax_structural(u, g, f));
      });
}

/// Homotopy fiber of a strict functor into a 2-category: no structural
/// insertion. Requires every structural cell of u to be an identity;
/// agrees with homotopy_fiber_lax on such functors.
inline HomotopyFiber homotopy_fiber_strict(const LaxFromCat& u, ObjId d) {
  for (const auto& [pr, cell] : u.structural) {
    ObjId a = u.obj_map[u.source.arrows[pr.second].src];
    ObjId c = u.obj_map[u.source.arrows[pr.first].tgt];
    if (!u.target.hom(a, c).is_identity(cell))
      throw PreconditionError("homotopy_fiber_strict: functor has a non-identity structural cell");
  }
  return detail::homotopy_fiber_build(
      u, d, [](ObjId, ObjId, ObjId, int, ArrId, ArrId) -> int { return -1; });
}

// ---------------------------------------------------------------------------
// Homotopy fibers of a 2-functor
// ---------------------------------------------------------------------------

/// Homotopy fiber of a strict 2-functor, itself a 2-category. Objects are
/// pairs (c, phi), 1-cells are pairs (f, alpha) with alpha a comparison
/// 2-cell of the target, and 2-cells are 2-cells of the source filtered by
/// compatibility with the comparison cells.
struct TwoFiber {
  Fin2Category cat;
  std::vector<std::pair<ObjId, int>> objects;           // (source object, local 1-arrow at d)
  std::vector<std::vector<std::pair<int, int>>> one_arrows;  // per hom: its (f, alpha) pairs
  TwoFunctor projection;                                // to the source of u
};

/// u//d for a strict 2-functor u: C -> D and an object d of D.
///
/// Objects: (c, phi: u(c) -> d). A 1-cell (c, phi) -> (c', phi') is a pair
/// (f: c -> c', alpha: phi'.u(f) => phi); composition pastes comparison
/// cells, so (g, beta).(f, alpha) = (gf, alpha . (beta o u(f))). A 2-cell
/// (f, alpha) => (f', alpha') is a 2-cell sigma: f => f' of C satisfying
/// alpha' . (phi' o u(sigma)) = alpha.
inline TwoFiber homotopy_fiber_2functor(const TwoFunctor& u, ObjId d) {
  const Fin2Category& C = u.source;
  const Fin2Category& D = u.target;
  TwoFiber H;
  for (ObjId c = 0; c < C.n_objects; ++c)
    for (int phi = 0; phi < D.n1(u.obj_map[c], d); ++phi) {
      H.objects.push_back({c, phi});
      H.cat.obj_names.push_back("(" + C.obj_name(c) + ", " +
                                D.one_name(u.obj_map[c], d, phi) + ")");
    }
  const int n = (int)H.objects.size();
  H.cat.n_objects = n;
  H.cat.homs.resize((size_t)n * n);
  H.cat.id1.resize(n);
  H.one_arrows.resize((size_t)n * n);
  // per hom: position of each (f, alpha) pair, each (target pair, sigma)
  // 2-cell, and the sigma itself per 2-cell
  std::vector<std::map<std::pair<int, int>, int>> pair_at((size_t)n * n);
  std::vector<std::map<std::pair<int, int>, int>> cell_at((size_t)n * n);
  std::vector<std::vector<std::pair<int, int>>> cell_data((size_t)n * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      auto [c, phi] = H.objects[s];
      auto [cp, phip] = H.objects[t];
      ObjId uc = u.obj_map[c], ucp = u.obj_map[cp];
      const FinCategory& homC = C.hom(c, cp);
      const FinCategory& homD = D.hom(uc, d);
      const std::vector<int>& uf = u.one_maps[C.pair(c, cp)];
      const std::vector<int>& us = u.two_maps[C.pair(c, cp)];
      auto& P = H.one_arrows[(size_t)s * n + t];
      FinCategory F;
      for (int f = 0; f < C.n1(c, cp); ++f) {
        int src1 = D.h1(uc, ucp, d, phip, uf[f]);
        for (int alpha = 0; alpha < homD.arrow_count(); ++alpha)
          if (homD.arrows[alpha].src == src1 && homD.arrows[alpha].tgt == phi) {
            pair_at[(size_t)s * n + t][{f, alpha}] = (int)P.size();
            P.push_back({f, alpha});
            F.obj_names.push_back("(" + C.one_name(c, cp, f) + ", " + homD.arr_name(alpha) + ")");
          }
      }
      F.n_objects = (int)P.size();
      // a 2-cell toward (f', alpha') along sigma: f => f' starts at
      // (src(sigma), alpha' . (phi' o u(sigma)))
      for (int tp = 0; tp < (int)P.size(); ++tp) {
        auto [fp, alphap] = P[tp];
        for (int sig = 0; sig < homC.arrow_count(); ++sig) {
          if (homC.arrows[sig].tgt != fp) continue;
          int whisk = D.h2(uc, ucp, d, D.id2(ucp, d, phip), us[sig]);
          int sp = pair_at[(size_t)s * n + t].at(
              {homC.arrows[sig].src, homD.comp_at(alphap, whisk)});
          cell_at[(size_t)s * n + t][{tp, sig}] = F.arrow_count();
          cell_data[(size_t)s * n + t].push_back({tp, sig});
          F.arrows.push_back({sp, tp, sp == tp && homC.is_identity(sig)});
          F.arr_names.push_back(homC.arr_name(sig));
        }
      }
      F.finalize();
      for (ArrId a2 = 0; a2 < F.arrow_count(); ++a2)
        for (ArrId a1 = 0; a1 < F.arrow_count(); ++a1) {
          if (!F.composable(a2, a1)) continue;
          auto [t2, s2] = cell_data[(size_t)s * n + t][a2];
          auto [t1, s1] = cell_data[(size_t)s * n + t][a1];
          (void)t1;
          F.set_comp(a2, a1,
                     cell_at[(size_t)s * n + t].at({t2, homC.comp_at(s2, s1)}));
        }
      H.cat.homs[(size_t)s * n + t] = F;
    }
  for (int s = 0; s < n; ++s) {
    auto [c, phi] = H.objects[s];
    H.cat.id1[s] =
        pair_at[(size_t)s * n + s].at({C.id1[c], D.id2(u.obj_map[c], d, phi)});
  }
  H.cat.alloc_tables();
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int r = 0; r < n; ++r) {
        auto [c, phi] = H.objects[s];
        auto [cp, phip] = H.objects[t];
        auto [cpp, phipp] = H.objects[r];
        ObjId uc = u.obj_map[c], ucp = u.obj_map[cp], ucpp = u.obj_map[cpp];
        (void)phip;
        (void)ucpp;
        const auto& Pst = H.one_arrows[(size_t)s * n + t];
        const auto& Ptr = H.one_arrows[(size_t)t * n + r];
        for (int gi = 0; gi < (int)Ptr.size(); ++gi)
          for (int fi = 0; fi < (int)Pst.size(); ++fi) {
            auto [g1, bcell] = Ptr[gi];
            auto [f1, acell] = Pst[fi];
            int cf = C.h1(c, cp, cpp, g1, f1);
            int whisk = D.h2(uc, ucp, d, bcell,
                             D.id2(uc, ucp, u.one_maps[C.pair(c, cp)][f1]));
            int alpha = D.hom(uc, d).comp_at(acell, whisk);
            H.cat.set_h1(s, t, r, gi, fi, pair_at[(size_t)s * n + r].at({cf, alpha}));
          }
        const FinCategory& Fst = H.cat.hom(s, t);
        const FinCategory& Ftr = H.cat.hom(t, r);
        for (ArrId a2 = 0; a2 < Ftr.arrow_count(); ++a2)
          for (ArrId a1 = 0; a1 < Fst.arrow_count(); ++a1) {
            auto [t2, s2] = cell_data[(size_t)t * n + r][a2];
            auto [t1, s1] = cell_data[(size_t)s * n + t][a1];
            int ct = H.cat.h1(s, t, r, t2, t1);
            H.cat.set_h2(s, t, r, a2, a1,
                         cell_at[(size_t)s * n + r].at({ct, C.h2(c, cp, cpp, s2, s1)}));
          }
      }
  H.projection.target = C;
  for (auto& [c, phi] : H.objects) {
    (void)phi;
    H.projection.obj_map.push_back(c);
  }
  H.projection.one_maps.resize((size_t)n * n);
  H.projection.two_maps.resize((size_t)n * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      for (auto& [f, alpha] : H.one_arrows[(size_t)s * n + t]) {
        (void)alpha;
        H.projection.one_maps[(size_t)s * n + t].push_back(f);
      }
      for (auto& [tp, sig] : cell_data[(size_t)s * n + t]) {
        (void)tp;
        H.projection.two_maps[(size_t)s * n + t].push_back(sig);
      }
    }
  H.projection.source = H.cat;
  return H;
}

/// d//u, the fiber under d: objects (c, phi: d -> u(c)), 1-cells
/// (f: c -> c', alpha: phi' => u(f).phi), 2-cells sigma: f => f' with
/// (u(sigma) o phi) . alpha = alpha'. Oriented so that the canonical
/// identification of (d//u) with the reversal of u'//d holds on the nose,
/// where u' reverses both 1-arrows and 2-cells.
inline TwoFiber homotopy_fiber_2functor_under(const TwoFunctor& u, ObjId d) {
  const Fin2Category& C = u.source;
  const Fin2Category& D = u.target;
  TwoFiber H;
  for (ObjId c = 0; c < C.n_objects; ++c)
    for (int phi = 0; phi < D.n1(d, u.obj_map[c]); ++phi) {
      H.objects.push_back({c, phi});
      H.cat.obj_names.push_back("(" + C.obj_name(c) + ", " +
                                D.one_name(d, u.obj_map[c], phi) + ")");
    }
  const int n = (int)H.objects.size();
  H.cat.n_objects = n;
  H.cat.homs.resize((size_t)n * n);
  H.cat.id1.resize(n);
  H.one_arrows.resize((size_t)n * n);
  // mirror image of the over-fiber: 2-cells are keyed by their source pair
  std::vector<std::map<std::pair<int, int>, int>> pair_at((size_t)n * n);
  std::vector<std::map<std::pair<int, int>, int>> cell_at((size_t)n * n);
  std::vector<std::vector<std::pair<int, int>>> cell_data((size_t)n * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      auto [c, phi] = H.objects[s];
      auto [cp, phip] = H.objects[t];
      ObjId uc = u.obj_map[c], ucp = u.obj_map[cp];
      const FinCategory& homC = C.hom(c, cp);
      const FinCategory& homD = D.hom(d, ucp);
      const std::vector<int>& uf = u.one_maps[C.pair(c, cp)];
      const std::vector<int>& us = u.two_maps[C.pair(c, cp)];
      auto& P = H.one_arrows[(size_t)s * n + t];
      FinCategory F;
      for (int f = 0; f < C.n1(c, cp); ++f) {
        int tgt1 = D.h1(d, uc, ucp, uf[f], phi);
        for (int alpha = 0; alpha < homD.arrow_count(); ++alpha)
          if (homD.arrows[alpha].src == phip && homD.arrows[alpha].tgt == tgt1) {
            pair_at[(size_t)s * n + t][{f, alpha}] = (int)P.size();
            P.push_back({f, alpha});
            F.obj_names.push_back("(" + C.one_name(c, cp, f) + ", " + homD.arr_name(alpha) + ")");
          }
      }
      F.n_objects = (int)P.size();
      // a 2-cell from (f, alpha) along sigma: f => f' ends at
      // (tgt(sigma), (u(sigma) o phi) . alpha)
      for (int sp = 0; sp < (int)P.size(); ++sp) {
        auto [f, alpha] = P[sp];
        for (int sig = 0; sig < homC.arrow_count(); ++sig) {
          if (homC.arrows[sig].src != f) continue;
          int whisk = D.h2(d, uc, ucp, us[sig], D.id2(d, uc, phi));
          int tp = pair_at[(size_t)s * n + t].at(
              {homC.arrows[sig].tgt, homD.comp_at(whisk, alpha)});
          cell_at[(size_t)s * n + t][{sp, sig}] = F.arrow_count();
          cell_data[(size_t)s * n + t].push_back({sp, sig});
          F.arrows.push_back({sp, tp, sp == tp && homC.is_identity(sig)});
          F.arr_names.push_back(homC.arr_name(sig));
        }
      }
      F.finalize();
      for (ArrId a2 = 0; a2 < F.arrow_count(); ++a2)
        for (ArrId a1 = 0; a1 < F.arrow_count(); ++a1) {
          if (!F.composable(a2, a1)) continue;
          auto [p2, s2] = cell_data[(size_t)s * n + t][a2];
          auto [p1, s1] = cell_data[(size_t)s * n + t][a1];
          (void)p2;
          F.set_comp(a2, a1,
                     cell_at[(size_t)s * n + t].at({p1, homC.comp_at(s2, s1)}));
        }
      H.cat.homs[(size_t)s * n + t] = F;
    }
  for (int s = 0; s < n; ++s) {
    auto [c, phi] = H.objects[s];
    H.cat.id1[s] =
        pair_at[(size_t)s * n + s].at({C.id1[c], D.id2(d, u.obj_map[c], phi)});
  }
  H.cat.alloc_tables();
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int r = 0; r < n; ++r) {
        auto [c, phi] = H.objects[s];
        auto [cp, phip] = H.objects[t];
        auto [cpp, phipp] = H.objects[r];
        ObjId uc = u.obj_map[c], ucp = u.obj_map[cp], ucpp = u.obj_map[cpp];
        (void)phip;
        (void)phipp;
        (void)uc;
        const auto& Pst = H.one_arrows[(size_t)s * n + t];
        const auto& Ptr = H.one_arrows[(size_t)t * n + r];
        for (int gi = 0; gi < (int)Ptr.size(); ++gi)
          for (int fi = 0; fi < (int)Pst.size(); ++fi) {
            auto [g1, bcell] = Ptr[gi];
            auto [f1, acell] = Pst[fi];
            int cf = C.h1(c, cp, cpp, g1, f1);
            int whisk = D.h2(d, ucp, ucpp,
                             D.id2(ucp, ucpp, u.one_maps[C.pair(cp, cpp)][g1]), acell);
            int alpha = D.hom(d, ucpp).comp_at(whisk, bcell);
            H.cat.set_h1(s, t, r, gi, fi, pair_at[(size_t)s * n + r].at({cf, alpha}));
          }
        const FinCategory& Fst = H.cat.hom(s, t);
        const FinCategory& Ftr = H.cat.hom(t, r);
        for (ArrId a2 = 0; a2 < Ftr.arrow_count(); ++a2)
          for (ArrId a1 = 0; a1 < Fst.arrow_count(); ++a1) {
            auto [p2, s2] = cell_data[(size_t)t * n + r][a2];
            auto [p1, s1] = cell_data[(size_t)s * n + t][a1];
            int cs = H.cat.h1(s, t, r, p2, p1);
            H.cat.set_h2(s, t, r, a2, a1,
                         cell_at[(size_t)s * n + r].at({cs, C.h2(c, cp, cpp, s2, s1)}));
          }
      }
  H.projection.target = C;
  for (auto& [c, phi] : H.objects) {
    (void)phi;
    H.projection.obj_map.push_back(c);
  }
  H.projection.one_maps.resize((size_t)n * n);
  H.projection.two_maps.resize((size_t)n * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      for (auto& [f, alpha] : H.one_arrows[(size_t)s * n + t]) {
        (void)alpha;
        H.projection.one_maps[(size_t)s * n + t].push_back(f);
      }
      for (auto& [sp, sig] : cell_data[(size_t)s * n + t]) {
        (void)sp;
        H.projection.two_maps[(size_t)s * n + t].push_back(sig);
      }
    }
  H.projection.source = H.cat;
  return H;
}

}  // namespace fincat

#endif
