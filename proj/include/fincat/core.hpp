#ifndef FINCAT_CORE_HPP
#define FINCAT_CORE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fincat {

using ObjId = int;
using ArrId = int;

/// Thrown when an exhaustive enumeration would exceed its configured budget.
/// `estimate` carries the projected search-space size.
class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(const std::string& what, long long estimate)
      : std::runtime_error(what + " (estimated search size " + std::to_string(estimate) + ")"),
        estimate(estimate) {}
  long long estimate;
};

/// Thrown when an operation's precondition fails (loop-freeness,
/// connectivity, truncation bounds, parallelism of cells, ...).
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Violation {
  std::string kind;
  std::string detail;
};

/// Outcome of a structural validation pass. Empty means valid.
struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(const std::string& kind, const std::string& detail) {
    violations.push_back({kind, detail});
  }
  void absorb(const ValidationReport& other, const std::string& prefix) {
    for (const auto& v : other.violations) violations.push_back({v.kind, prefix + v.detail});
  }
  std::string to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v.kind << ": " << v.detail << "\n";
    return os.str();
  }
};

struct Arrow {
  ObjId src = 0;
  ObjId tgt = 0;
  bool is_identity = false;
  bool operator==(const Arrow&) const = default;
};

/// A finite category given by a total composition table. Objects are
/// 0..n_objects-1, arrows are indices into `arrows`, and comp_at(g, f)
/// is "g after f", defined exactly when tgt(f) == src(g). Arrow equality
/// is identifier equality; nothing is ever compared by structure here.
struct FinCategory {
  int n_objects = 0;
  std::vector<Arrow> arrows;
  std::vector<int> comp;         // arrow_count^2 entries, -1 where undefined
  std::vector<int> identity_of;  // per object; set by finalize()
  std::vector<std::string> obj_names;
  std::vector<std::string> arr_names;

  int arrow_count() const { return (int)arrows.size(); }

  int comp_at(ArrId g, ArrId f) const { return comp[(size_t)g * arrows.size() + f]; }
  void set_comp(ArrId g, ArrId f, ArrId gf) { comp[(size_t)g * arrows.size() + f] = gf; }

  bool composable(ArrId g, ArrId f) const { return arrows[f].tgt == arrows[g].src; }

  ArrId compose(ArrId g, ArrId f) const {
    int r = comp_at(g, f);
    if (r < 0)
      throw PreconditionError("compose: undefined pair (" + arr_name(g) + ", " + arr_name(f) + ")");
    return r;
  }

  ArrId identity(ObjId c) const { return identity_of[c]; }
  bool is_identity(ArrId f) const { return arrows[f].is_identity; }

  std::vector<ArrId> hom(ObjId c, ObjId d) const {
    std::vector<ArrId> out;
    for (int f = 0; f < arrow_count(); ++f)
      if (arrows[f].src == c && arrows[f].tgt == d) out.push_back(f);
    return out;
  }

  std::string obj_name(ObjId c) const {
    if (c >= 0 && c < (int)obj_names.size() && !obj_names[c].empty()) return obj_names[c];
    return "#" + std::to_string(c);
  }
  std::string arr_name(ArrId f) const {
    if (f >= 0 && f < (int)arr_names.size() && !arr_names[f].empty()) return arr_names[f];
    return "a" + std::to_string(f);
  }

  /// Sizes the composition table if needed and records the identity arrow of
  /// each object (first flagged endo wins; validation reports duplicates).
  void finalize() {
    if (comp.size() != (size_t)arrow_count() * arrow_count())
      comp.assign((size_t)arrow_count() * arrow_count(), -1);
    identity_of.assign(n_objects, -1);
    for (int f = 0; f < arrow_count(); ++f)
      if (arrows[f].is_identity && arrows[f].src == arrows[f].tgt &&
          identity_of[arrows[f].src] < 0)
        identity_of[arrows[f].src] = f;
  }
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

inline ValidationReport validate(const FinCategory& C) {
  ValidationReport r;
  const int A = C.arrow_count();
  for (int f = 0; f < A; ++f) {
    const Arrow& a = C.arrows[f];
    if (a.src < 0 || a.src >= C.n_objects || a.tgt < 0 || a.tgt >= C.n_objects)
      r.add("bad-endpoint", "arrow " + C.arr_name(f) + " has out-of-range endpoints");
  }
  if ((int)C.identity_of.size() != C.n_objects) {
    r.add("not-finalized", "identity_of has wrong size; call finalize()");
    return r;
  }
  // exactly one identity per object
  for (ObjId c = 0; c < C.n_objects; ++c) {
    int count = 0;
    for (int f = 0; f < A; ++f)
      if (C.arrows[f].is_identity && C.arrows[f].src == c && C.arrows[f].tgt == c) ++count;
    if (count != 1)
      r.add("identity-count", "object " + C.obj_name(c) + " has " + std::to_string(count) +
                                  " identity arrows (expected 1)");
    else if (C.identity_of[c] < 0)
      r.add("identity-missing", "object " + C.obj_name(c) + " has no recorded identity");
  }
  for (int f = 0; f < A; ++f)
    if (C.arrows[f].is_identity && C.arrows[f].src != C.arrows[f].tgt)
      r.add("identity-shape", "identity flag on non-endo arrow " + C.arr_name(f));
  if (C.comp.size() != (size_t)A * A) {
    r.add("not-finalized", "composition table has wrong size");
    return r;
  }
  // totality on composable pairs, undefinedness elsewhere, endpoint closure
  for (int g = 0; g < A; ++g)
    for (int f = 0; f < A; ++f) {
      int gf = C.comp_at(g, f);
      if (C.composable(g, f)) {
        if (gf < 0) {
          r.add("comp-missing",
                "composable pair (" + C.arr_name(g) + ", " + C.arr_name(f) + ") has no composite");
          continue;
        }
        if (gf >= A) {
          r.add("comp-range", "composite of (" + C.arr_name(g) + ", " + C.arr_name(f) + ") out of range");
          continue;
        }
        if (C.arrows[gf].src != C.arrows[f].src || C.arrows[gf].tgt != C.arrows[g].tgt)
          r.add("comp-endpoints", "composite " + C.arr_name(gf) + " of (" + C.arr_name(g) + ", " +
                                      C.arr_name(f) + ") has wrong endpoints");
      } else if (gf >= 0) {
        r.add("comp-spurious",
              "non-composable pair (" + C.arr_name(g) + ", " + C.arr_name(f) + ") has a composite");
      }
    }
  if (!r.ok()) return r;  // unit/associativity need a well-formed table
  for (int f = 0; f < A; ++f) {
    const Arrow& a = C.arrows[f];
    if (C.comp_at(C.identity(a.tgt), f) != f)
      r.add("unit-left", "id . " + C.arr_name(f) + " != " + C.arr_name(f));
    if (C.comp_at(f, C.identity(a.src)) != f)
      r.add("unit-right", C.arr_name(f) + " . id != " + C.arr_name(f));
  }
  for (int h = 0; h < A; ++h)
    for (int g = 0; g < A; ++g) {
      if (!C.composable(h, g)) continue;
      for (int f = 0; f < A; ++f) {
        if (!C.composable(g, f)) continue;
        if (C.comp_at(C.comp_at(h, g), f) != C.comp_at(h, C.comp_at(g, f)))
          r.add("assoc", "(" + C.arr_name(h) + " . " + C.arr_name(g) + ") . " + C.arr_name(f) +
                             " != " + C.arr_name(h) + " . (" + C.arr_name(g) + " . " + C.arr_name(f) + ")");
      }
    }
  return r;
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// The ordinal [n]: objects 0..n, one arrow i->j for each i <= j.
inline FinCategory ordinal(int n) {
  FinCategory C;
  C.n_objects = n + 1;
  std::vector<std::vector<int>> idx(n + 1, std::vector<int>(n + 1, -1));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      idx[i][j] = C.arrow_count();
      C.arrows.push_back({i, j, i == j});
      C.arr_names.push_back(i == j ? "id" + std::to_string(i)
                                   : "f" + std::to_string(i) + std::to_string(j));
    }
  for (int i = 0; i <= n; ++i) C.obj_names.push_back(std::to_string(i));
  C.finalize();
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) C.set_comp(idx[j][k], idx[i][j], idx[i][k]);
  return C;
}

inline FinCategory discrete_category(int n) {
  FinCategory C;
  C.n_objects = n;
  for (int i = 0; i < n; ++i) {
    C.arrows.push_back({i, i, true});
    C.arr_names.push_back("id" + std::to_string(i));
    C.obj_names.push_back(std::to_string(i));
  }
  C.finalize();
  for (int i = 0; i < n; ++i) C.set_comp(i, i, i);
  return C;
}

/// One-object category on a finite monoid. table[a][b] = a*b, unit is the
/// identity arrow.
inline FinCategory monoid_category(const std::vector<std::vector<int>>& table, int unit,
                                   const std::vector<std::string>& names = {}) {
  FinCategory C;
  C.n_objects = 1;
  C.obj_names = {"m"};
  int n = (int)table.size();
  for (int a = 0; a < n; ++a) {
    C.arrows.push_back({0, 0, a == unit});
    C.arr_names.push_back(a < (int)names.size() ? names[a] : "e" + std::to_string(a));
  }
  C.finalize();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) C.set_comp(a, b, table[a][b]);
  return C;
}

/// Thin category of a preorder: one arrow i->j whenever leq(i, j).
/// leq must be reflexive and transitive; composition is forced.
inline FinCategory preorder_category(int n, const std::function<bool(int, int)>& leq,
                                     const std::vector<std::string>& obj_names = {}) {
  FinCategory C;
  C.n_objects = n;
  std::vector<std::vector<int>> idx(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (leq(i, j) || i == j) {
        idx[i][j] = C.arrow_count();
        C.arrows.push_back({i, j, i == j});
        C.arr_names.push_back(i == j ? "id" + std::to_string(i)
                                     : "r" + std::to_string(i) + std::to_string(j));
      }
  for (int i = 0; i < n; ++i)
    C.obj_names.push_back(i < (int)obj_names.size() ? obj_names[i] : std::to_string(i));
  C.finalize();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (idx[i][j] >= 0 && idx[j][k] >= 0) {
          if (idx[i][k] < 0) throw PreconditionError("preorder_category: relation not transitive");
          C.set_comp(idx[j][k], idx[i][j], idx[i][k]);
        }
  return C;
}

/// The three-object span c <- cp -> cpp (two non-identity arrows g, f).
inline FinCategory span_category() {
  FinCategory C = preorder_category(
      3, [](int i, int j) { return i == 1 && j != 1; }, {"c", "cp", "cpp"});
  // rename the two non-identity arrows to the customary g: cp->c, f: cp->cpp
  for (int a = 0; a < C.arrow_count(); ++a) {
    if (C.arrows[a].is_identity) continue;
    C.arr_names[a] = (C.arrows[a].tgt == 0) ? "g" : "f";
  }
  return C;
}

inline FinCategory opposite(const FinCategory& C) {
  FinCategory D = C;
  for (auto& a : D.arrows) std::swap(a.src, a.tgt);
  for (int g = 0; g < C.arrow_count(); ++g)
    for (int f = 0; f < C.arrow_count(); ++f) D.set_comp(g, f, C.comp_at(f, g));
  return D;
}

inline FinCategory product(const FinCategory& C, const FinCategory& D) {
  FinCategory P;
  P.n_objects = C.n_objects * D.n_objects;
  auto ob = [&](ObjId c, ObjId d) { return c * D.n_objects + d; };
  int AC = C.arrow_count(), AD = D.arrow_count();
  for (int f = 0; f < AC; ++f)
    for (int g = 0; g < AD; ++g) {
      P.arrows.push_back({ob(C.arrows[f].src, D.arrows[g].src), ob(C.arrows[f].tgt, D.arrows[g].tgt),
                          C.arrows[f].is_identity && D.arrows[g].is_identity});
      P.arr_names.push_back("(" + C.arr_name(f) + "," + D.arr_name(g) + ")");
    }
  for (int c = 0; c < C.n_objects; ++c)
    for (int d = 0; d < D.n_objects; ++d)
      P.obj_names.push_back("(" + C.obj_name(c) + "," + D.obj_name(d) + ")");
  P.finalize();
  auto ar = [&](ArrId f, ArrId g) { return f * AD + g; };
  for (int f2 = 0; f2 < AC; ++f2)
    for (int g2 = 0; g2 < AD; ++g2)
      for (int f1 = 0; f1 < AC; ++f1)
        for (int g1 = 0; g1 < AD; ++g1)
          if (C.composable(f2, f1) && D.composable(g2, g1))
            P.set_comp(ar(f2, g2), ar(f1, g1), ar(C.comp_at(f2, f1), D.comp_at(g2, g1)));
  return P;
}

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

/// Skeletal partial order: at most one arrow per ordered pair, the only endos
/// are identities, and no two distinct objects are isomorphic.
inline bool is_poset(const FinCategory& C) {
  for (ObjId c = 0; c < C.n_objects; ++c)
    for (ObjId d = 0; d < C.n_objects; ++d) {
      size_t k = C.hom(c, d).size();
      if (c == d && k != 1) return false;
      if (c != d && k > 1) return false;
      if (c != d && k == 1 && !C.hom(d, c).empty()) return false;
    }
  return true;
}

/// Looks for a directed cycle through non-identity arrows. Returns the
/// objects of a cycle if one exists; nullopt means the category is loop-free.
inline std::optional<std::vector<ObjId>> find_loop(const FinCategory& C) {
  // endo non-identity arrows are cycles of length one
  for (int f = 0; f < C.arrow_count(); ++f)
    if (!C.arrows[f].is_identity && C.arrows[f].src == C.arrows[f].tgt)
      return std::vector<ObjId>{C.arrows[f].src};
  std::vector<std::vector<ObjId>> succ(C.n_objects);
  for (int f = 0; f < C.arrow_count(); ++f)
    if (!C.arrows[f].is_identity) succ[C.arrows[f].src].push_back(C.arrows[f].tgt);
  std::vector<int> state(C.n_objects, 0);  // 0 unseen, 1 on stack, 2 done
  std::vector<ObjId> stack;
  std::function<std::optional<std::vector<ObjId>>(ObjId)> dfs =
      [&](ObjId v) -> std::optional<std::vector<ObjId>> {
    state[v] = 1;
    stack.push_back(v);
    for (ObjId w : succ[v]) {
      if (state[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        return std::vector<ObjId>(it, stack.end());
      }
      if (state[w] == 0)
        if (auto cyc = dfs(w)) return cyc;
    }
    stack.pop_back();
    state[v] = 2;
    return std::nullopt;
  };
  for (ObjId v = 0; v < C.n_objects; ++v)
    if (state[v] == 0)
      if (auto cyc = dfs(v)) return cyc;
  return std::nullopt;
}

inline bool loop_free(const FinCategory& C) { return !find_loop(C).has_value(); }

/// Length (in arrows) of the longest identity-free chain. Requires loop-free.
inline int longest_chain_length(const FinCategory& C) {
  if (!loop_free(C)) throw PreconditionError("longest_chain_length: category has loops");
  std::vector<int> depth(C.n_objects, -1);
  std::function<int(ObjId)> go = [&](ObjId v) {
    if (depth[v] >= 0) return depth[v];
    depth[v] = 0;
    int best = 0;
    for (int f = 0; f < C.arrow_count(); ++f)
      if (!C.arrows[f].is_identity && C.arrows[f].src == v)
        best = std::max(best, 1 + go(C.arrows[f].tgt));
    return depth[v] = best;
  };
  int best = 0;
  for (ObjId v = 0; v < C.n_objects; ++v) best = std::max(best, go(v));
  return best;
}

/// Connected components of the underlying undirected graph on objects.
/// Returns the component index of every object.
inline std::vector<int> object_components(const FinCategory& C) {
  std::vector<int> comp(C.n_objects, -1);
  std::vector<std::vector<ObjId>> adj(C.n_objects);
  for (const auto& a : C.arrows)
    if (a.src != a.tgt) {
      adj[a.src].push_back(a.tgt);
      adj[a.tgt].push_back(a.src);
    }
  int k = 0;
  for (ObjId s = 0; s < C.n_objects; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<ObjId> queue{s};
    comp[s] = k;
    while (!queue.empty()) {
      ObjId v = queue.back();
      queue.pop_back();
      for (ObjId w : adj[v])
        if (comp[w] < 0) {
          comp[w] = k;
          queue.push_back(w);
        }
    }
    ++k;
  }
  return comp;
}

inline int component_count(const FinCategory& C) {
  auto comp = object_components(C);
  return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
}

// ---------------------------------------------------------------------------
// Functors and natural transformations
// ---------------------------------------------------------------------------

struct CatFunctor {
  FinCategory source;
  FinCategory target;
  std::vector<ObjId> obj_map;
  std::vector<ArrId> arr_map;

  ObjId on_obj(ObjId c) const { return obj_map[c]; }
  ArrId on_arr(ArrId f) const { return arr_map[f]; }
};

inline ValidationReport validate_functor(const CatFunctor& F) {
  ValidationReport r;
  const FinCategory& C = F.source;
  const FinCategory& D = F.target;
  if ((int)F.obj_map.size() != C.n_objects || (int)F.arr_map.size() != C.arrow_count()) {
    r.add("functor-size", "object or arrow map has wrong size");
    return r;
  }
  for (int f = 0; f < C.arrow_count(); ++f) {
    ArrId g = F.arr_map[f];
    if (g < 0 || g >= D.arrow_count()) {
      r.add("functor-range", "image of " + C.arr_name(f) + " out of range");
      return r;
    }
    if (D.arrows[g].src != F.obj_map[C.arrows[f].src] || D.arrows[g].tgt != F.obj_map[C.arrows[f].tgt])
      r.add("functor-endpoints", "image of " + C.arr_name(f) + " has wrong endpoints");
  }
  for (ObjId c = 0; c < C.n_objects; ++c)
    if (F.arr_map[C.identity(c)] != D.identity(F.obj_map[c]))
      r.add("functor-identity", "identity of " + C.obj_name(c) + " not sent to an identity");
  for (int g = 0; g < C.arrow_count(); ++g)
    for (int f = 0; f < C.arrow_count(); ++f)
      if (C.composable(g, f))
        if (F.arr_map[C.comp_at(g, f)] != D.comp_at(F.arr_map[g], F.arr_map[f]))
          r.add("functor-comp",
                "F(" + C.arr_name(g) + " . " + C.arr_name(f) + ") != F(" + C.arr_name(g) + ") . F(" +
                    C.arr_name(f) + ")");
  return r;
}

inline CatFunctor identity_functor(const FinCategory& C) {
  CatFunctor F{C, C, {}, {}};
  F.obj_map.resize(C.n_objects);
  F.arr_map.resize(C.arrow_count());
  for (int i = 0; i < C.n_objects; ++i) F.obj_map[i] = i;
  for (int i = 0; i < C.arrow_count(); ++i) F.arr_map[i] = i;
  return F;
}

/// G after F (table composition; source of G must structurally match the
/// target of F).
inline CatFunctor compose_functors(const CatFunctor& G, const CatFunctor& F) {
  CatFunctor H{F.source, G.target, {}, {}};
  H.obj_map.resize(F.source.n_objects);
  H.arr_map.resize(F.source.arrow_count());
  for (int c = 0; c < F.source.n_objects; ++c) H.obj_map[c] = G.obj_map[F.obj_map[c]];
  for (int f = 0; f < F.source.arrow_count(); ++f) H.arr_map[f] = G.arr_map[F.arr_map[f]];
  return H;
}

inline bool same_maps(const CatFunctor& F, const CatFunctor& G) {
  return F.obj_map == G.obj_map && F.arr_map == G.arr_map;
}

/// Natural transformation F => G between parallel functors: one component
/// arrow of the target per source object.
struct NatTransf {
  std::vector<ArrId> components;
};

inline ValidationReport validate_nat(const CatFunctor& F, const CatFunctor& G, const NatTransf& t) {
  ValidationReport r;
  const FinCategory& C = F.source;
  const FinCategory& D = F.target;
  if ((int)t.components.size() != C.n_objects) {
    r.add("nat-size", "component list has wrong size");
    return r;
  }
  for (ObjId c = 0; c < C.n_objects; ++c) {
    ArrId m = t.components[c];
    if (m < 0 || m >= D.arrow_count() || D.arrows[m].src != F.obj_map[c] ||
        D.arrows[m].tgt != G.obj_map[c]) {
      r.add("nat-endpoints", "component at " + C.obj_name(c) + " has wrong endpoints");
      return r;
    }
  }
  for (int f = 0; f < C.arrow_count(); ++f) {
    ObjId c = C.arrows[f].src, d = C.arrows[f].tgt;
    if (D.comp_at(t.components[d], F.arr_map[f]) != D.comp_at(G.arr_map[f], t.components[c]))
      r.add("nat-square", "naturality fails at arrow " + C.arr_name(f));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration (bounded)
// ---------------------------------------------------------------------------

/// All functors C -> D in a deterministic (lexicographic) order. The product
/// of per-arrow choice counts is estimated up front; if it exceeds `budget`
/// the enumeration refuses to start.
inline std::vector<CatFunctor> enumerate_functors(const FinCategory& C, const FinCategory& D,
                                                  long long budget = 5000000) {
  std::vector<CatFunctor> out;
  std::vector<int> nonid;
  for (int f = 0; f < C.arrow_count(); ++f)
    if (!C.arrows[f].is_identity) nonid.push_back(f);

  // budget estimate: sum over object maps of the product of candidate counts
  long long total = 0;
  {
    std::vector<std::vector<ArrId>> homs(D.n_objects * (size_t)D.n_objects);
    for (int c = 0; c < D.n_objects; ++c)
      for (int d = 0; d < D.n_objects; ++d) homs[c * D.n_objects + d] = D.hom(c, d);
    std::vector<ObjId> om(C.n_objects, 0);
    bool done = C.n_objects > 0 && D.n_objects == 0;
    if (C.n_objects == 0) total = 1;
    while (!done && C.n_objects > 0) {
      long long prod = 1;
      for (int f : nonid) {
        prod *= (long long)homs[om[C.arrows[f].src] * D.n_objects + om[C.arrows[f].tgt]].size();
        if (prod == 0 || prod > budget) break;
      }
      total += prod;
      if (total > budget)
        throw BudgetExceeded("enumerate_functors: search too large", total);
      int i = C.n_objects - 1;
      while (i >= 0 && om[i] == D.n_objects - 1) om[i--] = 0;
      if (i < 0) break;
      ++om[i];
    }
  }
  (void)total;

  std::vector<ObjId> om(C.n_objects, 0);
  std::vector<ArrId> am(C.arrow_count(), -1);
  if (C.n_objects > 0 && D.n_objects == 0) return out;

  std::function<void(size_t)> place = [&](size_t k) {
    if (k == nonid.size()) {
      // functoriality on all composable pairs
      for (int g = 0; g < C.arrow_count(); ++g)
        for (int f = 0; f < C.arrow_count(); ++f)
          if (C.composable(g, f) && am[C.comp_at(g, f)] != D.comp_at(am[g], am[f])) return;
      CatFunctor F{C, D, om, am};
      out.push_back(F);
      return;
    }
    int f = nonid[k];
    for (ArrId g = 0; g < D.arrow_count(); ++g) {
      if (D.arrows[g].src != om[C.arrows[f].src] || D.arrows[g].tgt != om[C.arrows[f].tgt]) continue;
      am[f] = g;
      // incremental check against already-assigned arrows
      bool fine = true;
      for (size_t j = 0; fine && j <= k; ++j) {
        int h = nonid[j];
        if (C.composable(f, h) && am[C.comp_at(f, h)] >= 0 &&
            am[C.comp_at(f, h)] != D.comp_at(am[f], am[h]))
          fine = false;
        if (C.composable(h, f) && am[C.comp_at(h, f)] >= 0 &&
            am[C.comp_at(h, f)] != D.comp_at(am[h], am[f]))
          fine = false;
      }
      if (fine) place(k + 1);
      am[f] = -1;
    }
  };

  bool more = true;
  if (C.n_objects == 0) {
    out.push_back(CatFunctor{C, D, {}, {}});
    return out;
  }
  while (more) {
    for (ObjId c = 0; c < C.n_objects; ++c) am[C.identity(c)] = D.identity(om[c]);
    place(0);
    int i = C.n_objects - 1;
    while (i >= 0 && om[i] == D.n_objects - 1) om[i--] = 0;
    if (i < 0)
      more = false;
    else
      ++om[i];
  }
  return out;
}

/// Bounded isomorphism search. Returns an invertible functor C -> D if one
/// exists. Intended for desk-scale inputs; candidates are pruned by hom-set
/// size fingerprints before backtracking.
inline std::optional<CatFunctor> find_isomorphism(const FinCategory& C, const FinCategory& D,
                                                  long long budget = 5000000) {
  if (C.n_objects != D.n_objects || C.arrow_count() != D.arrow_count()) return std::nullopt;
  const int n = C.n_objects;
  auto fingerprint = [](const FinCategory& X, ObjId c) {
    std::vector<std::pair<int, int>> fp;  // sorted (|hom(c,d)|, |hom(d,c)|)
    for (ObjId d = 0; d < X.n_objects; ++d)
      fp.push_back({(int)X.hom(c, d).size(), (int)X.hom(d, c).size()});
    std::sort(fp.begin(), fp.end());
    return fp;
  };
  std::vector<std::vector<std::pair<int, int>>> fc(n), fd(n);
  for (int i = 0; i < n; ++i) {
    fc[i] = fingerprint(C, i);
    fd[i] = fingerprint(D, i);
  }
  long long nodes = 0;
  std::vector<ObjId> om(n, -1);
  std::vector<bool> used(n, false);

  std::function<std::optional<CatFunctor>()> match_arrows = [&]() -> std::optional<CatFunctor> {
    // map arrows hom-set by hom-set with backtracking
    std::vector<ArrId> am(C.arrow_count(), -1);
    std::vector<bool> taken(D.arrow_count(), false);
    std::vector<std::pair<std::vector<ArrId>, std::vector<ArrId>>> blocks;
    for (ObjId c = 0; c < n; ++c)
      for (ObjId d = 0; d < n; ++d) {
        auto hc = C.hom(c, d);
        auto hd = D.hom(om[c], om[d]);
        if (hc.size() != hd.size()) return std::nullopt;
        if (!hc.empty()) blocks.push_back({hc, hd});
      }
    std::function<bool(size_t, size_t)> go = [&](size_t bi, size_t k) -> bool {
      if (bi == blocks.size()) {
        for (int g = 0; g < C.arrow_count(); ++g)
          for (int f = 0; f < C.arrow_count(); ++f)
            if (C.composable(g, f) && am[C.comp_at(g, f)] != D.comp_at(am[g], am[f])) return false;
        return true;
      }
      auto& [hc, hd] = blocks[bi];
      if (k == hc.size()) return go(bi + 1, 0);
      ArrId f = hc[k];
      for (ArrId g : hd) {
        if (taken[g]) continue;
        if (C.arrows[f].is_identity != D.arrows[g].is_identity) continue;
        if (++nodes > budget) throw BudgetExceeded("find_isomorphism: search too large", nodes);
        am[f] = g;
        taken[g] = true;
        bool fine = true;
        for (int h = 0; fine && h < C.arrow_count(); ++h) {
          if (am[h] < 0) continue;
          if (C.composable(f, h) && am[C.comp_at(f, h)] >= 0 &&
              am[C.comp_at(f, h)] != D.comp_at(am[f], am[h]))
            fine = false;
          if (C.composable(h, f) && am[C.comp_at(h, f)] >= 0 &&
              am[C.comp_at(h, f)] != D.comp_at(am[h], am[f]))
            fine = false;
        }
        if (fine && go(bi, k + 1)) return true;
        taken[g] = false;
        am[f] = -1;
      }
      return false;
    };
    if (go(0, 0)) return CatFunctor{C, D, om, am};
    return std::nullopt;
  };

  std::function<std::optional<CatFunctor>(ObjId)> place = [&](ObjId c) -> std::optional<CatFunctor> {
    if (c == n) return match_arrows();
    for (ObjId d = 0; d < n; ++d) {
      if (used[d] || fc[c] != fd[d]) continue;
      if (++nodes > budget) throw BudgetExceeded("find_isomorphism: search too large", nodes);
      om[c] = d;
      used[d] = true;
      if (auto r = place(c + 1)) return r;
      used[d] = false;
      om[c] = -1;
    }
    return std::nullopt;
  };
  if (n == 0) return CatFunctor{C, D, {}, {}};
  return place(0);
}

// ---------------------------------------------------------------------------
// Ordinal maps
// ---------------------------------------------------------------------------

/// Monotone map [dom] -> [cod] between finite ordinals, v has dom+1 entries.
struct OrdinalMap {
  int dom = 0;
  int cod = 0;
  std::vector<int> v;

  int operator()(int i) const { return v[i]; }
  bool operator==(const OrdinalMap& o) const { return dom == o.dom && cod == o.cod && v == o.v; }
  bool operator<(const OrdinalMap& o) const {
    return std::tie(dom, cod, v) < std::tie(o.dom, o.cod, o.v);
  }
};

inline bool is_monotone(const OrdinalMap& a) {
  if ((int)a.v.size() != a.dom + 1) return false;
  for (int i = 0; i <= a.dom; ++i)
    if (a.v[i] < 0 || a.v[i] > a.cod) return false;
  for (int i = 1; i <= a.dom; ++i)
    if (a.v[i - 1] > a.v[i]) return false;
  return true;
}

inline OrdinalMap ordinal_id(int n) {
  OrdinalMap a{n, n, {}};
  a.v.resize(n + 1);
  for (int i = 0; i <= n; ++i) a.v[i] = i;
  return a;
}

inline bool is_ordinal_id(const OrdinalMap& a) { return a.dom == a.cod && a == ordinal_id(a.dom); }

/// b after a.
inline OrdinalMap ordinal_compose(const OrdinalMap& b, const OrdinalMap& a) {
  if (a.cod != b.dom) throw PreconditionError("ordinal_compose: domain mismatch");
  OrdinalMap c{a.dom, b.cod, {}};
  c.v.resize(a.dom + 1);
  for (int i = 0; i <= a.dom; ++i) c.v[i] = b.v[a.v[i]];
  return c;
}

/// Coface [n-1] -> [n] skipping i.
inline OrdinalMap delta_map(int n, int i) {
  OrdinalMap a{n - 1, n, {}};
  for (int j = 0; j <= n - 1; ++j) a.v.push_back(j < i ? j : j + 1);
  return a;
}

/// Codegeneracy [n+1] -> [n] hitting i twice.
inline OrdinalMap sigma_map(int n, int i) {
  OrdinalMap a{n + 1, n, {}};
  for (int j = 0; j <= n + 1; ++j) a.v.push_back(j <= i ? j : j - 1);
  return a;
}

inline bool is_ordinal_injective(const OrdinalMap& a) {
  for (int i = 1; i <= a.dom; ++i)
    if (a.v[i - 1] >= a.v[i]) return false;
  return true;
}

inline bool is_ordinal_surjective(const OrdinalMap& a) {
  std::vector<bool> hit(a.cod + 1, false);
  for (int x : a.v) hit[x] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

/// Unique epi-mono factorization a = mono . epi.
inline std::pair<OrdinalMap, OrdinalMap> factor_epi_mono(const OrdinalMap& a) {
  std::vector<int> image;
  for (int x : a.v)
    if (image.empty() || image.back() != x) image.push_back(x);
  OrdinalMap mono{(int)image.size() - 1, a.cod, image};
  OrdinalMap epi{a.dom, (int)image.size() - 1, {}};
  for (int i = 0; i <= a.dom; ++i)
    epi.v.push_back((int)(std::lower_bound(image.begin(), image.end(), a.v[i]) - image.begin()));
  return {epi, mono};
}

/// All monotone maps [dom] -> [cod] in lexicographic order.
inline std::vector<OrdinalMap> all_ordinal_maps(int dom, int cod) {
  std::vector<OrdinalMap> out;
  OrdinalMap a{dom, cod, std::vector<int>(dom + 1, 0)};
  while (true) {
    out.push_back(a);
    int i = dom;
    while (i >= 0 && a.v[i] == cod) --i;
    if (i < 0) break;
    ++a.v[i];
    for (int j = i + 1; j <= dom; ++j) a.v[j] = a.v[i];
  }
  return out;
}

inline std::string ordinal_to_string(const OrdinalMap& a) {
  std::string s = "[";
  for (int i = 0; i <= a.dom; ++i) s += (i ? "," : "") + std::to_string(a.v[i]);
  return s + "]";
}

}  // namespace fincat

#endif
