#ifndef FINCAT_IO_HPP
#define FINCAT_IO_HPP

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fincat/core.hpp"
#include "fincat/homology.hpp"
#include "fincat/pi1.hpp"
#include "fincat/simplexloop.hpp"
#include "fincat/simplicial.hpp"
#include "fincat/twocat.hpp"
#include "json.hpp"

namespace fincat {

/// Ill-formed input files: missing keys, unknown or duplicate names,
/// incomplete tables. Distinct from PreconditionError so callers can map
/// schema problems to their own exit code.
struct SchemaError : public std::runtime_error {
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// All file I/O goes through ordered JSON so that serialization is
/// byte-deterministic: keys come out in the order they were inserted.
using Json = nlohmann::ordered_json;

namespace iodetail {

inline const Json& member(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + ": missing key '" + key + "'");
  return *it;
}

inline std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where + ": expected a string");
  return j.get<std::string>();
}

/// Name resolution with duplicate and unknown-name errors that quote the
/// offending entity.
struct NameTable {
  std::string kind;
  std::map<std::string, int> index;

  explicit NameTable(std::string k) : kind(std::move(k)) {}

  int add(const std::string& name, int id) {
    if (name.empty()) throw SchemaError("empty " + kind + " name");
    if (!index.emplace(name, id).second)
      throw SchemaError("duplicate " + kind + " name '" + name + "'");
    return id;
  }
  int get(const std::string& name, const std::string& where) const {
    auto it = index.find(name);
    if (it == index.end())
      throw SchemaError(where + ": unknown " + kind + " name '" + name + "'");
    return it->second;
  }
};

/// Composition-style entries share one shape: a three-key object naming the
/// pair and its composite.
struct PairEntry {
  std::string left, right, out;
};

inline std::vector<PairEntry> pair_entries(const Json& j, const char* key, const char* lk,
                                           const char* rk, const char* ok) {
  std::vector<PairEntry> out;
  auto it = j.find(key);
  if (it == j.end()) return out;
  if (!it->is_array()) throw SchemaError(std::string(key) + ": expected an array");
  for (const Json& e : *it) {
    std::string where = std::string(key) + " entry";
    out.push_back({text(member(e, lk, where), where + " '" + lk + "'"),
                   text(member(e, rk, where), where + " '" + rk + "'"),
                   text(member(e, ok, where), where + " '" + ok + "'")});
  }
  return out;
}

}  // namespace iodetail

// ---------------------------------------------------------------------------
// Categories
// ---------------------------------------------------------------------------

/// Reads `{"objects": [...], "arrows": [{"name","src","tgt"}], "compose":
/// [{"g","f","gf"}]}`. Identity arrows are implicit: one is added per object
/// under the name "id:<object>", and unit compositions are filled in. The
/// compose list must cover every composable pair of non-identity arrows;
/// entries mentioning identities are tolerated only when they restate the
/// unit law.
inline FinCategory category_from_json(const Json& j) {
  using namespace iodetail;
  if (!j.is_object()) throw SchemaError("category: expected a JSON object");

  FinCategory C;
  NameTable objects("object");
  const Json& objs = member(j, "objects", "category");
  if (!objs.is_array()) throw SchemaError("objects: expected an array");
  for (const Json& o : objs) {
    std::string name = text(o, "objects entry");
    objects.add(name, C.n_objects++);
    C.obj_names.push_back(name);
  }

  NameTable arrows("arrow");
  for (ObjId c = 0; c < C.n_objects; ++c) {
    arrows.add("id:" + C.obj_names[c], (int)C.arrows.size());
    C.arr_names.push_back("id:" + C.obj_names[c]);
    C.arrows.push_back({c, c, true});
  }
  auto it = j.find("arrows");
  if (it != j.end()) {
    if (!it->is_array()) throw SchemaError("arrows: expected an array");
    for (const Json& a : *it) {
      std::string name = text(member(a, "name", "arrows entry"), "arrow name");
      arrows.add(name, (int)C.arrows.size());
      C.arr_names.push_back(name);
      C.arrows.push_back({objects.get(text(member(a, "src", "arrow '" + name + "'"), name), name),
                          objects.get(text(member(a, "tgt", "arrow '" + name + "'"), name), name),
                          false});
    }
  }
  C.finalize();

  for (ArrId f = 0; f < C.arrow_count(); ++f) {
    C.set_comp(C.identity(C.arrows[f].tgt), f, f);
    C.set_comp(f, C.identity(C.arrows[f].src), f);
  }
  for (const auto& e : iodetail::pair_entries(j, "compose", "g", "f", "gf")) {
    std::string where = "compose entry (" + e.left + ", " + e.right + ")";
    ArrId g = arrows.get(e.left, where);
    ArrId f = arrows.get(e.right, where);
    ArrId gf = arrows.get(e.out, where);
    if (!C.composable(g, f)) throw SchemaError(where + ": arrows are not composable");
    int prior = C.comp_at(g, f);
    if (prior >= 0 && prior != gf)
      throw SchemaError(where + ": conflicts with " + C.arr_name(prior));
    C.set_comp(g, f, gf);
  }
  for (ArrId g = 0; g < C.arrow_count(); ++g)
    for (ArrId f = 0; f < C.arrow_count(); ++f)
      if (C.composable(g, f) && C.comp_at(g, f) < 0)
        throw SchemaError("compose is missing the pair (" + C.arr_name(g) + ", " + C.arr_name(f) +
                          ")");
  return C;
}

namespace iodetail {

/// Serialization uses stored names when they are usable (nonempty, no
/// duplicates, objects free of the hom-key separator); otherwise it falls
/// back to positional names for the whole tier, keeping output deterministic.
inline std::vector<std::string> unique_names(int n, const std::function<std::string(int)>& stored,
                                             const std::string& prefix, bool forbid_comma = false) {
  std::vector<std::string> names;
  std::map<std::string, int> seen;
  bool usable = true;
  for (int i = 0; i < n; ++i) {
    std::string s = stored(i);
    if (s.empty() || (forbid_comma && s.find(',') != std::string::npos) ||
        !seen.emplace(s, i).second)
      usable = false;
    names.push_back(s);
  }
  if (!usable)
    for (int i = 0; i < n; ++i) names[i] = prefix + std::to_string(i);
  return names;
}

}  // namespace iodetail

/// Inverse of category_from_json: identity arrows are dropped (they are
/// implicit in the schema) and composites that land on an identity are
/// written under the implicit "id:<object>" name.
inline Json category_to_json(const FinCategory& C) {
  std::vector<std::string> onames = iodetail::unique_names(
      C.n_objects, [&](int i) { return C.obj_name(i); }, "o", true);
  std::vector<std::string> anames(C.arrow_count());
  {
    // Stored names squatting on the implicit identity namespace would not
    // parse back; they force the positional fallback.
    std::vector<std::string> base = iodetail::unique_names(
        C.arrow_count(),
        [&](int i) {
          std::string s = C.arr_name(i);
          return (!C.is_identity(i) && s.rfind("id:", 0) == 0) ? std::string() : s;
        },
        "a");
    for (ArrId f = 0; f < C.arrow_count(); ++f)
      anames[f] = C.is_identity(f) ? "id:" + onames[C.arrows[f].src] : base[f];
  }
  Json j;
  j["objects"] = onames;
  j["arrows"] = Json::array();
  for (ArrId f = 0; f < C.arrow_count(); ++f) {
    if (C.is_identity(f)) continue;
    Json a;
    a["name"] = anames[f];
    a["src"] = onames[C.arrows[f].src];
    a["tgt"] = onames[C.arrows[f].tgt];
    j["arrows"].push_back(a);
  }
  j["compose"] = Json::array();
  for (ArrId g = 0; g < C.arrow_count(); ++g)
    for (ArrId f = 0; f < C.arrow_count(); ++f) {
      if (C.is_identity(g) || C.is_identity(f) || !C.composable(g, f)) continue;
      Json e;
      e["g"] = anames[g];
      e["f"] = anames[f];
      e["gf"] = anames[C.comp_at(g, f)];
      j["compose"].push_back(e);
    }
  return j;
}

// ---------------------------------------------------------------------------
// 2-categories
// ---------------------------------------------------------------------------

namespace iodetail {

/// Location of a globally named 1-arrow or 2-cell: source object, target
/// object, local index inside that hom.
struct CellRef {
  ObjId src = 0, tgt = 0;
  int local = 0;
};

}  // namespace iodetail

/// Reads `{"objects", "homs": {"c,d": <category schema, objects = 1-arrows,
/// arrows = 2-cells>}, "identities": {"object": "1-arrow"}, "hcompose1":
/// [{"g","f","gf"}], "hcompose2": [{"beta","alpha","comp"}]}`. 1-arrow and
/// 2-cell names must be unique across all homs. Horizontal composition
/// entries forced by the unit laws (either factor an identity 1-arrow, or
/// both 2-cells identities) are filled in automatically; every other pair
/// must be listed.
inline Fin2Category two_category_from_json(const Json& j) {
  using namespace iodetail;
  if (!j.is_object()) throw SchemaError("2-category: expected a JSON object");

  Fin2Category T;
  NameTable objects("object");
  const Json& olist = member(j, "objects", "2-category");
  if (!olist.is_array()) throw SchemaError("objects: expected an array");
  for (const Json& o : olist) {
    std::string name = text(o, "objects entry");
    if (name.find(',') != std::string::npos)
      throw SchemaError("object name '" + name + "' may not contain ','");
    objects.add(name, T.n_objects++);
    T.obj_names.push_back(name);
  }
  T.homs.assign((size_t)T.n_objects * T.n_objects, FinCategory{});
  for (auto& H : T.homs) H.finalize();

  const Json& homs = member(j, "homs", "2-category");
  if (!homs.is_object()) throw SchemaError("homs: expected an object");
  for (auto it = homs.begin(); it != homs.end(); ++it) {
    const std::string& key = it.key();
    size_t comma = key.find(',');
    if (comma == std::string::npos)
      throw SchemaError("homs key '" + key + "': expected \"src,tgt\"");
    ObjId c = objects.get(key.substr(0, comma), "homs key '" + key + "'");
    ObjId d = objects.get(key.substr(comma + 1), "homs key '" + key + "'");
    try {
      T.homs[T.pair(c, d)] = category_from_json(it.value());
    } catch (const SchemaError& e) {
      throw SchemaError("hom '" + key + "': " + e.what());
    }
  }

  NameTable ones("1-arrow"), twos("2-cell");
  std::vector<CellRef> one_refs, two_refs;
  for (ObjId c = 0; c < T.n_objects; ++c)
    for (ObjId d = 0; d < T.n_objects; ++d) {
      const FinCategory& H = T.hom(c, d);
      for (int f = 0; f < H.n_objects; ++f) {
        ones.add(H.obj_name(f), (int)one_refs.size());
        one_refs.push_back({c, d, f});
      }
      for (int m = 0; m < H.arrow_count(); ++m) {
        twos.add(H.arr_name(m), (int)two_refs.size());
        two_refs.push_back({c, d, m});
      }
    }

  const Json& ids = member(j, "identities", "2-category");
  if (!ids.is_object()) throw SchemaError("identities: expected an object");
  T.id1.assign(T.n_objects, -1);
  for (auto it = ids.begin(); it != ids.end(); ++it) {
    ObjId c = objects.get(it.key(), "identities");
    CellRef r = one_refs[ones.get(text(it.value(), "identities entry"), "identities")];
    if (r.src != c || r.tgt != c)
      throw SchemaError("identity 1-arrow of '" + it.key() + "' does not live in hom(" +
                        it.key() + "," + it.key() + ")");
    T.id1[c] = r.local;
  }
  for (ObjId c = 0; c < T.n_objects; ++c)
    if (T.id1[c] < 0)
      throw SchemaError("missing identity 1-arrow for object '" + T.obj_names[c] + "'");

  T.alloc_tables();
  auto set1 = [&](ObjId c, ObjId d, ObjId e, int g, int f, int gf, const std::string& where) {
    int prior = T.h1(c, d, e, g, f);
    if (prior >= 0 && prior != gf) throw SchemaError(where + ": conflicts with an earlier value");
    T.set_h1(c, d, e, g, f, gf);
  };
  for (ObjId c = 0; c < T.n_objects; ++c)
    for (ObjId d = 0; d < T.n_objects; ++d)
      for (int f = 0; f < T.n1(c, d); ++f) {
        set1(c, d, d, T.id1[d], f, f, "unit law");
        set1(c, c, d, f, T.id1[c], f, "unit law");
      }
  for (const auto& e : pair_entries(j, "hcompose1", "g", "f", "gf")) {
    std::string where = "hcompose1 entry (" + e.left + ", " + e.right + ")";
    CellRef g = one_refs[ones.get(e.left, where)];
    CellRef f = one_refs[ones.get(e.right, where)];
    CellRef gf = one_refs[ones.get(e.out, where)];
    if (f.tgt != g.src) throw SchemaError(where + ": 1-arrows do not chain");
    if (gf.src != f.src || gf.tgt != g.tgt)
      throw SchemaError(where + ": composite '" + e.out + "' has the wrong endpoints");
    set1(f.src, f.tgt, g.tgt, g.local, f.local, gf.local, where);
  }
  for (ObjId c = 0; c < T.n_objects; ++c)
    for (ObjId d = 0; d < T.n_objects; ++d)
      for (ObjId e = 0; e < T.n_objects; ++e)
        for (int g = 0; g < T.n1(d, e); ++g)
          for (int f = 0; f < T.n1(c, d); ++f)
            if (T.h1(c, d, e, g, f) < 0)
              throw SchemaError("hcompose1 is missing the pair (" + T.hom(d, e).obj_name(g) +
                                ", " + T.hom(c, d).obj_name(f) + ")");

  auto set2 = [&](ObjId c, ObjId d, ObjId e, int b, int a, int ba, const std::string& where) {
    int prior = T.h2(c, d, e, b, a);
    if (prior >= 0 && prior != ba) throw SchemaError(where + ": conflicts with an earlier value");
    T.set_h2(c, d, e, b, a, ba);
  };
  for (ObjId c = 0; c < T.n_objects; ++c)
    for (ObjId d = 0; d < T.n_objects; ++d)
      for (ObjId e = 0; e < T.n_objects; ++e) {
        const FinCategory &HL = T.hom(d, e), &HR = T.hom(c, d);
        for (int g = 0; g < HL.n_objects; ++g)
          for (int f = 0; f < HR.n_objects; ++f)
            set2(c, d, e, HL.identity(g), HR.identity(f),
                 T.hom(c, e).identity(T.h1(c, d, e, g, f)), "interchange unit");
        if (d == e)
          for (int a = 0; a < HR.arrow_count(); ++a)
            set2(c, d, d, HL.identity(T.id1[d]), a, a, "horizontal unit");
        if (c == d)
          for (int b = 0; b < HL.arrow_count(); ++b)
            set2(c, c, e, b, HR.identity(T.id1[c]), b, "horizontal unit");
      }
  for (const auto& e : pair_entries(j, "hcompose2", "beta", "alpha", "comp")) {
    std::string where = "hcompose2 entry (" + e.left + ", " + e.right + ")";
    CellRef b = two_refs[twos.get(e.left, where)];
    CellRef a = two_refs[twos.get(e.right, where)];
    CellRef ba = two_refs[twos.get(e.out, where)];
    if (a.tgt != b.src) throw SchemaError(where + ": 2-cells do not chain horizontally");
    if (ba.src != a.src || ba.tgt != b.tgt)
      throw SchemaError(where + ": composite '" + e.out + "' lives in the wrong hom");
    set2(a.src, a.tgt, b.tgt, b.local, a.local, ba.local, where);
  }
  for (ObjId c = 0; c < T.n_objects; ++c)
    for (ObjId d = 0; d < T.n_objects; ++d)
      for (ObjId e = 0; e < T.n_objects; ++e)
        for (int b = 0; b < T.n2(d, e); ++b)
          for (int a = 0; a < T.n2(c, d); ++a)
            if (T.h2(c, d, e, b, a) < 0)
              throw SchemaError("hcompose2 is missing the pair (" + T.hom(d, e).arr_name(b) +
                                ", " + T.hom(c, d).arr_name(a) + ")");
  return T;
}

inline Json two_category_to_json(const Fin2Category& T) {
  using iodetail::unique_names;
  std::vector<std::string> onames = unique_names(
      T.n_objects, [&](int i) { return T.obj_name(i); }, "o", true);

  // Global 1-arrow and 2-cell names; fall back wholesale when stored names
  // collide across homs.
  int n1_total = 0, n2_total = 0;
  std::vector<int> one_base((size_t)T.n_objects * T.n_objects, 0);
  std::vector<int> two_base((size_t)T.n_objects * T.n_objects, 0);
  for (ObjId c = 0; c < T.n_objects; ++c)
    for (ObjId d = 0; d < T.n_objects; ++d) {
      one_base[T.pair(c, d)] = n1_total;
      two_base[T.pair(c, d)] = n2_total;
      n1_total += T.n1(c, d);
      n2_total += T.n2(c, d);
    }
  auto locate = [&](const std::vector<int>& base, int global) {
    for (int p = (int)base.size() - 1; p >= 0; --p)
      if (base[p] <= global && (p + 1 == (int)base.size() || global < base[p + 1]))
        return std::pair<int, int>(p, global - base[p]);
    return std::pair<int, int>(0, global);
  };
  std::vector<std::string> fnames = unique_names(
      n1_total,
      [&](int i) {
        auto [p, local] = locate(one_base, i);
        return T.homs[p].obj_name(local);
      },
      "f");
  std::vector<std::string> mnames(n2_total);
  {
    std::vector<std::string> base = unique_names(
        n2_total,
        [&](int i) {
          auto [p, local] = locate(two_base, i);
          std::string s = T.homs[p].arr_name(local);
          return (!T.homs[p].is_identity(local) && s.rfind("id:", 0) == 0) ? std::string() : s;
        },
        "m");
    for (int i = 0; i < n2_total; ++i) {
      auto [p, local] = locate(two_base, i);
      mnames[i] = T.homs[p].is_identity(local)
                      ? "id:" + fnames[one_base[p] + T.homs[p].arrows[local].src]
                      : base[i];
    }
  }

  Json j;
  j["objects"] = onames;
  j["homs"] = Json::object();
  for (ObjId c = 0; c < T.n_objects; ++c)
    for (ObjId d = 0; d < T.n_objects; ++d) {
      if (T.n1(c, d) == 0) continue;
      FinCategory H = T.hom(c, d);
      H.obj_names.assign(fnames.begin() + one_base[T.pair(c, d)],
                         fnames.begin() + one_base[T.pair(c, d)] + H.n_objects);
      H.arr_names.assign(mnames.begin() + two_base[T.pair(c, d)],
                         mnames.begin() + two_base[T.pair(c, d)] + H.arrow_count());
      j["homs"][onames[c] + "," + onames[d]] = category_to_json(H);
    }
  j["identities"] = Json::object();
  for (ObjId c = 0; c < T.n_objects; ++c)
    j["identities"][onames[c]] = fnames[one_base[T.pair(c, c)] + T.id1[c]];
  j["hcompose1"] = Json::array();
  for (ObjId c = 0; c < T.n_objects; ++c)
    for (ObjId d = 0; d < T.n_objects; ++d)
      for (ObjId e = 0; e < T.n_objects; ++e)
        for (int g = 0; g < T.n1(d, e); ++g)
          for (int f = 0; f < T.n1(c, d); ++f) {
            if ((d == e && g == T.id1[d]) || (c == d && f == T.id1[c])) continue;
            Json entry;
            entry["g"] = fnames[one_base[T.pair(d, e)] + g];
            entry["f"] = fnames[one_base[T.pair(c, d)] + f];
            entry["gf"] = fnames[one_base[T.pair(c, e)] + T.h1(c, d, e, g, f)];
            j["hcompose1"].push_back(entry);
          }
  j["hcompose2"] = Json::array();
  for (ObjId c = 0; c < T.n_objects; ++c)
    for (ObjId d = 0; d < T.n_objects; ++d)
      for (ObjId e = 0; e < T.n_objects; ++e) {
        const FinCategory &HL = T.hom(d, e), &HR = T.hom(c, d);
        for (int b = 0; b < HL.arrow_count(); ++b)
          for (int a = 0; a < HR.arrow_count(); ++a) {
            if (HL.is_identity(b) && HR.is_identity(a)) continue;
            if (d == e && b == HL.identity(T.id1[d])) continue;
            if (c == d && a == HR.identity(T.id1[c])) continue;
            Json entry;
            entry["beta"] = mnames[two_base[T.pair(d, e)] + b];
            entry["alpha"] = mnames[two_base[T.pair(c, d)] + a];
            entry["comp"] = mnames[two_base[T.pair(c, e)] + T.h2(c, d, e, b, a)];
            j["hcompose2"].push_back(entry);
          }
      }
  return j;
}

// ---------------------------------------------------------------------------
// Strict monoidal categories
// ---------------------------------------------------------------------------

/// A strict monoidal category as file data: the underlying category plus the
/// tensor tables and unit, ready for from_monoidal / deloop_check.
struct MonoidalData {
  FinCategory M;
  std::vector<std::vector<int>> t_obj;
  std::vector<std::vector<int>> t_arr;
  ObjId unit = 0;
};

/// Extends the category schema with `"unit": object, "tensor": [{"x","y",
/// "xy"}] on objects, "tensor_arrows": [{"x","y","xy"}] on arrows`. Tensors
/// of two identity arrows are derived from the object table; every other
/// arrow pair must be listed (so purely discrete monoids need no
/// tensor_arrows at all).
inline MonoidalData monoidal_from_json(const Json& j) {
  using namespace iodetail;
  MonoidalData D;
  D.M = category_from_json(j);
  NameTable objects("object"), arrows("arrow");
  for (ObjId c = 0; c < D.M.n_objects; ++c) objects.add(D.M.obj_names[c], c);
  for (ArrId f = 0; f < D.M.arrow_count(); ++f) arrows.add(D.M.arr_names[f], f);

  D.unit = objects.get(text(member(j, "unit", "monoidal category"), "unit"), "unit");
  int n = D.M.n_objects, A = D.M.arrow_count();
  D.t_obj.assign(n, std::vector<int>(n, -1));
  D.t_arr.assign(A, std::vector<int>(A, -1));
  for (const auto& e : pair_entries(j, "tensor", "x", "y", "xy")) {
    std::string where = "tensor entry (" + e.left + ", " + e.right + ")";
    int x = objects.get(e.left, where), y = objects.get(e.right, where);
    int xy = objects.get(e.out, where);
    if (D.t_obj[x][y] >= 0 && D.t_obj[x][y] != xy)
      throw SchemaError(where + ": conflicts with an earlier value");
    D.t_obj[x][y] = xy;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (D.t_obj[x][y] < 0)
        throw SchemaError("tensor is missing the pair (" + D.M.obj_name(x) + ", " +
                          D.M.obj_name(y) + ")");
  for (ObjId x = 0; x < n; ++x)
    for (ObjId y = 0; y < n; ++y)
      D.t_arr[D.M.identity(x)][D.M.identity(y)] = D.M.identity(D.t_obj[x][y]);
  for (const auto& e : pair_entries(j, "tensor_arrows", "x", "y", "xy")) {
    std::string where = "tensor_arrows entry (" + e.left + ", " + e.right + ")";
    int x = arrows.get(e.left, where), y = arrows.get(e.right, where);
    int xy = arrows.get(e.out, where);
    if (D.t_arr[x][y] >= 0 && D.t_arr[x][y] != xy)
      throw SchemaError(where + ": conflicts with an earlier value");
    D.t_arr[x][y] = xy;
  }
  for (int x = 0; x < A; ++x)
    for (int y = 0; y < A; ++y)
      if (D.t_arr[x][y] < 0)
        throw SchemaError("tensor_arrows is missing the pair (" + D.M.arr_name(x) + ", " +
                          D.M.arr_name(y) + ")");
  return D;
}

inline Json monoidal_to_json(const MonoidalData& D) {
  Json j = category_to_json(D.M);
  std::vector<std::string> onames = j["objects"].get<std::vector<std::string>>();
  std::vector<std::string> anames(D.M.arrow_count());
  for (ArrId f = 0; f < D.M.arrow_count(); ++f)
    anames[f] = D.M.is_identity(f) ? "id:" + onames[D.M.arrows[f].src] : D.M.arr_name(f);
  j["unit"] = onames[D.unit];
  j["tensor"] = Json::array();
  for (int x = 0; x < D.M.n_objects; ++x)
    for (int y = 0; y < D.M.n_objects; ++y) {
      Json e;
      e["x"] = onames[x];
      e["y"] = onames[y];
      e["xy"] = onames[D.t_obj[x][y]];
      j["tensor"].push_back(e);
    }
  j["tensor_arrows"] = Json::array();
  for (int x = 0; x < D.M.arrow_count(); ++x)
    for (int y = 0; y < D.M.arrow_count(); ++y) {
      if (D.M.is_identity(x) && D.M.is_identity(y)) continue;
      Json e;
      e["x"] = anames[x];
      e["y"] = anames[y];
      e["xy"] = anames[D.t_arr[x][y]];
      j["tensor_arrows"].push_back(e);
    }
  return j;
}

// ---------------------------------------------------------------------------
// Maps between parsed structures
// ---------------------------------------------------------------------------

/// A parsed map file. `kind` selects which member is meaningful: "functor"
/// fills `functor`, "lax" fills `lax`.
struct MapData {
  std::string kind;
  CatFunctor functor;
  LaxFromCat lax;
};

/// Tells the four input schemas apart by their distinguishing keys.
inline std::string json_kind(const Json& j) {
  if (!j.is_object()) throw SchemaError("input: expected a JSON object");
  if (j.contains("kind")) return "map";
  if (j.contains("homs")) return "two-category";
  if (j.contains("unit") || j.contains("tensor")) return "monoidal";
  return "category";
}

/// Reads `{"kind": "functor"|"lax", "source": <ref>, "target": <ref>,
/// "objects": {src: tgt}, "arrows": {src: tgt}, "structural": [{"g","f",
/// "cell"}]}`. A <ref> is either an inline schema object or a string passed
/// to `load` (the CLI resolves it as a path relative to the map file).
/// Identity arrows map automatically; for "lax", a category-shaped target is
/// wrapped as a discrete-hom 2-category and a monoidal one is delooped,
/// normality cells are derived, and every other composable pair needs a
/// structural entry.
inline MapData map_from_json(const Json& j,
                             const std::function<Json(const std::string&)>& load) {
  using namespace iodetail;
  auto resolve = [&](const char* key) -> Json {
    const Json& r = member(j, key, "map file");
    if (r.is_string()) return load(r.get<std::string>());
    return r;
  };
  MapData D;
  D.kind = text(member(j, "kind", "map file"), "kind");
  if (D.kind != "functor" && D.kind != "lax")
    throw SchemaError("map kind '" + D.kind + "' is not supported (expected functor or lax)");

  FinCategory source = category_from_json(resolve("source"));
  NameTable sobj("source object"), sarr("source arrow");
  for (ObjId c = 0; c < source.n_objects; ++c) sobj.add(source.obj_names[c], c);
  for (ArrId f = 0; f < source.arrow_count(); ++f) sarr.add(source.arr_names[f], f);

  const Json& omap = member(j, "objects", "map file");
  if (!omap.is_object()) throw SchemaError("objects: expected an object of name pairs");
  const Json* amap = j.contains("arrows") ? &j["arrows"] : nullptr;
  if (amap && !amap->is_object()) throw SchemaError("arrows: expected an object of name pairs");

  if (D.kind == "functor") {
    Json tj = resolve("target");
    if (json_kind(tj) != "category")
      throw SchemaError("functor target: expected a category schema");
    CatFunctor& F = D.functor;
    F.source = source;
    F.target = category_from_json(tj);
    NameTable tobj("target object"), tarr("target arrow");
    for (ObjId c = 0; c < F.target.n_objects; ++c) tobj.add(F.target.obj_names[c], c);
    for (ArrId f = 0; f < F.target.arrow_count(); ++f) tarr.add(F.target.arr_names[f], f);

    F.obj_map.assign(source.n_objects, -1);
    for (auto it = omap.begin(); it != omap.end(); ++it)
      F.obj_map[sobj.get(it.key(), "objects")] =
          tobj.get(text(it.value(), "objects entry"), "objects");
    for (ObjId c = 0; c < source.n_objects; ++c)
      if (F.obj_map[c] < 0)
        throw SchemaError("objects is missing '" + source.obj_names[c] + "'");
    F.arr_map.assign(source.arrow_count(), -1);
    for (ArrId f = 0; f < source.arrow_count(); ++f)
      if (source.is_identity(f)) F.arr_map[f] = F.target.identity(F.obj_map[source.arrows[f].src]);
    if (amap)
      for (auto it = amap->begin(); it != amap->end(); ++it) {
        ArrId f = sarr.get(it.key(), "arrows");
        ArrId v = tarr.get(text(it.value(), "arrows entry"), "arrows");
        if (F.arr_map[f] >= 0 && F.arr_map[f] != v)
          throw SchemaError("arrows entry '" + it.key() + "' contradicts the identity law");
        F.arr_map[f] = v;
      }
    for (ArrId f = 0; f < source.arrow_count(); ++f)
      if (F.arr_map[f] < 0)
        throw SchemaError("arrows is missing '" + source.arr_names[f] + "'");
    return D;
  }

  Json tj = resolve("target");
  LaxFromCat& u = D.lax;
  u.source = source;
  if (json_kind(tj) == "category") {
    u.target = from_category(category_from_json(tj));
  } else if (json_kind(tj) == "monoidal") {
    MonoidalData M = monoidal_from_json(tj);
    u.target = from_monoidal(M.M, M.t_obj, M.t_arr, M.unit);
  } else {
    u.target = two_category_from_json(tj);
  }
  const Fin2Category& T = u.target;
  NameTable tobj("target object"), ones("target 1-arrow"), twos("target 2-cell");
  std::vector<CellRef> one_refs, two_refs;
  for (ObjId c = 0; c < T.n_objects; ++c) tobj.add(T.obj_names[c], c);
  for (ObjId c = 0; c < T.n_objects; ++c)
    for (ObjId d = 0; d < T.n_objects; ++d) {
      for (int f = 0; f < T.n1(c, d); ++f) {
        ones.add(T.hom(c, d).obj_name(f), (int)one_refs.size());
        one_refs.push_back({c, d, f});
      }
      for (int m = 0; m < T.n2(c, d); ++m) {
        twos.add(T.hom(c, d).arr_name(m), (int)two_refs.size());
        two_refs.push_back({c, d, m});
      }
    }

  u.obj_map.assign(source.n_objects, -1);
  for (auto it = omap.begin(); it != omap.end(); ++it)
    u.obj_map[sobj.get(it.key(), "objects")] =
        tobj.get(text(it.value(), "objects entry"), "objects");
  for (ObjId c = 0; c < source.n_objects; ++c)
    if (u.obj_map[c] < 0) throw SchemaError("objects is missing '" + source.obj_names[c] + "'");

  u.one_map.assign(source.arrow_count(), -1);
  for (ArrId f = 0; f < source.arrow_count(); ++f)
    if (source.is_identity(f)) u.one_map[f] = T.id1[u.obj_map[source.arrows[f].src]];
  if (amap)
    for (auto it = amap->begin(); it != amap->end(); ++it) {
      ArrId f = sarr.get(it.key(), "arrows");
      CellRef r = one_refs[ones.get(text(it.value(), "arrows entry"), "arrows")];
      if (r.src != u.obj_map[source.arrows[f].src] || r.tgt != u.obj_map[source.arrows[f].tgt])
        throw SchemaError("arrows entry '" + it.key() + "': 1-arrow '" +
                          text(it.value(), "arrows entry") + "' lives in the wrong hom");
      if (u.one_map[f] >= 0 && u.one_map[f] != r.local)
        throw SchemaError("arrows entry '" + it.key() + "' contradicts normality");
      u.one_map[f] = r.local;
    }
  for (ArrId f = 0; f < source.arrow_count(); ++f)
    if (u.one_map[f] < 0) throw SchemaError("arrows is missing '" + source.arr_names[f] + "'");

  // Normality pins the structural cell whenever either factor is an
  // identity; the rest come from the file.
  for (ArrId g = 0; g < source.arrow_count(); ++g)
    for (ArrId f = 0; f < source.arrow_count(); ++f) {
      if (!source.composable(g, f)) continue;
      if (source.is_identity(g) || source.is_identity(f)) {
        ObjId a = u.obj_map[source.arrows[f].src], b = u.obj_map[source.arrows[g].tgt];
        u.structural[{g, f}] = T.id2(a, b, u.one_map[source.comp_at(g, f)]);
      }
    }
  if (j.contains("structural")) {
    for (const auto& e : pair_entries(j, "structural", "g", "f", "cell")) {
      std::string where = "structural entry (" + e.left + ", " + e.right + ")";
      ArrId g = sarr.get(e.left, where), f = sarr.get(e.right, where);
      if (!source.composable(g, f)) throw SchemaError(where + ": arrows are not composable");
      CellRef r = two_refs[twos.get(e.out, where)];
      if (r.src != u.obj_map[source.arrows[f].src] || r.tgt != u.obj_map[source.arrows[g].tgt])
        throw SchemaError(where + ": cell '" + e.out + "' lives in the wrong hom");
      auto it = u.structural.find({g, f});
      if (it != u.structural.end() && it->second != r.local)
        throw SchemaError(where + ": contradicts normality");
      u.structural[{g, f}] = r.local;
    }
  }
  for (ArrId g = 0; g < source.arrow_count(); ++g)
    for (ArrId f = 0; f < source.arrow_count(); ++f)
      if (source.composable(g, f) && !u.structural.count({g, f}))
        throw SchemaError("structural cell missing for (" + source.arr_name(g) + ", " +
                          source.arr_name(f) + ")");
  return D;
}

// ---------------------------------------------------------------------------
// Simplicial export and homology reports
// ---------------------------------------------------------------------------

/// Plain-text export, one simplex per line: `dim id: face0 face1 ...`.
/// Faces are written as the nondegenerate base id followed by the
/// degeneracy word, e.g. `4`, `1s0`, `0s0s1`. Diff-friendly: ids are dense
/// and the order is fixed by the structure itself.
inline std::string face_list(const TruncatedSimplicialSet& X) {
  std::string out;
  for (int n = 0; n <= X.max_dim; ++n)
    for (int id = 0; id < X.count(n); ++id) {
      out += std::to_string(n) + " " + std::to_string(id) + ":";
      if (n > 0)
        for (const SimplexRef& F : X.faces[n][id]) {
          out += " " + std::to_string(F.base_id);
          for (int s : degeneracy_word(F.surj)) out += "s" + std::to_string(s);
        }
      out += "\n";
    }
  return out;
}

namespace iodetail {

inline Json int_json(const Int& v) {
  if (v <= Int(std::numeric_limits<long long>::max())) return v.convert_to<long long>();
  return v.convert_to<std::string>();  // torsion beyond int64: keep exact as text
}

inline Int int_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw SchemaError(where + ": expected an integer");
}

}  // namespace iodetail

/// `{"truncation", "reliable_through", "coefficients", "degrees": [{"degree",
/// "betti", "torsion": [...]}]}`. mod_p = 0 means integral coefficients.
inline Json homology_report(const HomologySummary& H, int truncation, long long mod_p = 0) {
  Json j;
  j["truncation"] = truncation;
  j["reliable_through"] = H.k_max;
  j["coefficients"] = mod_p ? "mod " + std::to_string(mod_p) : std::string("integers");
  j["degrees"] = Json::array();
  for (int k = 0; k <= H.k_max; ++k) {
    Json d;
    d["degree"] = k;
    d["betti"] = H.degrees[k].betti;
    d["torsion"] = Json::array();
    for (const Int& t : H.degrees[k].torsion) d["torsion"].push_back(iodetail::int_json(t));
    j["degrees"].push_back(d);
  }
  return j;
}

inline HomologySummary homology_from_json(const Json& j) {
  using namespace iodetail;
  HomologySummary H;
  const Json& degrees = member(j, "degrees", "homology report");
  for (const Json& d : degrees) {
    DegreeHomology h;
    h.betti = member(d, "betti", "degree entry").get<int>();
    for (const Json& t : member(d, "torsion", "degree entry"))
      h.torsion.push_back(int_from_json(t, "torsion entry"));
    H.degrees.push_back(h);
  }
  H.k_max = (int)H.degrees.size() - 1;
  return H;
}

inline Json validation_to_json(const ValidationReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["violations"] = Json::array();
  for (const auto& v : r.violations) {
    Json e;
    e["kind"] = v.kind;
    e["detail"] = v.detail;
    j["violations"].push_back(e);
  }
  return j;
}

inline ValidationReport validation_from_json(const Json& j) {
  ValidationReport r;
  for (const Json& e : iodetail::member(j, "violations", "validation report"))
    r.add(iodetail::text(iodetail::member(e, "kind", "violation"), "kind"),
          iodetail::text(iodetail::member(e, "detail", "violation"), "detail"));
  return r;
}

// ---------------------------------------------------------------------------
// Loop-space reports
// ---------------------------------------------------------------------------

namespace iodetail {

inline std::string verdict_string(QVerdict v) {
  switch (v) {
    case QVerdict::certified: return "certified";
    case QVerdict::refuted: return "refuted";
    default: return "heuristic";
  }
}
inline QVerdict verdict_from(const std::string& s, const std::string& where) {
  if (s == "certified") return QVerdict::certified;
  if (s == "refuted") return QVerdict::refuted;
  if (s == "heuristic") return QVerdict::heuristic;
  throw SchemaError(where + ": unknown verdict '" + s + "'");
}
inline std::string match_string(MatchVerdict v) {
  switch (v) {
    case MatchVerdict::passed: return "passed";
    case MatchVerdict::failed: return "failed";
    default: return "undetermined";
  }
}
inline MatchVerdict match_from(const std::string& s, const std::string& where) {
  if (s == "passed") return MatchVerdict::passed;
  if (s == "failed") return MatchVerdict::failed;
  if (s == "undetermined") return MatchVerdict::undetermined;
  throw SchemaError(where + ": unknown match verdict '" + s + "'");
}

}  // namespace iodetail

inline Json q_report_to_json(const QReport& R) {
  Json j;
  j["at"] = R.at;
  j["holds"] = R.holds();
  j["certified"] = R.certified();
  j["records"] = Json::array();
  for (const auto& r : R.records) {
    Json e;
    e["src"] = r.src;
    e["tgt"] = r.tgt;
    e["arrow"] = r.arrow;
    e["label"] = r.label;
    e["verdict"] = iodetail::verdict_string(r.verdict);
    e["witness"] = r.witness;
    j["records"].push_back(e);
  }
  return j;
}

inline QReport q_report_from_json(const Json& j) {
  using namespace iodetail;
  QReport R;
  R.at = member(j, "at", "Q report").get<ObjId>();
  for (const Json& e : member(j, "records", "Q report")) {
    QArrowRecord r;
    r.src = member(e, "src", "Q record").get<ObjId>();
    r.tgt = member(e, "tgt", "Q record").get<ObjId>();
    r.arrow = member(e, "arrow", "Q record").get<int>();
    r.label = text(member(e, "label", "Q record"), "label");
    r.verdict = verdict_from(text(member(e, "verdict", "Q record"), "verdict"), "Q record");
    r.witness = text(member(e, "witness", "Q record"), "witness");
    R.records.push_back(std::move(r));
  }
  return R;
}

inline Json pi1_to_json(const Pi1Result& p) {
  Json j;
  j["abelian_rank"] = p.abelian_rank;
  j["abelian_torsion"] = Json::array();
  for (const Int& t : p.abelian_torsion) j["abelian_torsion"].push_back(iodetail::int_json(t));
  j["certified_infinite"] = p.certified_infinite;
  j["order_known"] = p.order_known;
  j["order"] = p.order;
  return j;
}

inline Pi1Result pi1_from_json(const Json& j) {
  using namespace iodetail;
  Pi1Result p;
  p.abelian_rank = member(j, "abelian_rank", "pi1").get<int>();
  for (const Json& t : member(j, "abelian_torsion", "pi1"))
    p.abelian_torsion.push_back(int_from_json(t, "pi1 torsion"));
  p.certified_infinite = member(j, "certified_infinite", "pi1").get<bool>();
  p.order_known = member(j, "order_known", "pi1").get<bool>();
  p.order = member(j, "order", "pi1").get<long long>();
  return p;
}

inline Json loop_report_to_json(const LoopReport& R, int truncation, int k_max) {
  Json j;
  j["at"] = R.at;
  j["truncation"] = truncation;
  j["k_max"] = k_max;
  j["loop_pi0"] = R.loop_pi0;
  j["order_match"] = iodetail::match_string(R.order_match);
  j["h0_match"] = iodetail::match_string(R.h0_match);
  j["loop_homology"] = homology_report(R.loop_homology, k_max + 1);
  j["pi1"] = pi1_to_json(R.pi1);
  j["q"] = q_report_to_json(R.q);
  return j;
}

inline LoopReport loop_report_from_json(const Json& j) {
  using namespace iodetail;
  LoopReport R;
  R.at = member(j, "at", "loop report").get<ObjId>();
  R.loop_pi0 = member(j, "loop_pi0", "loop report").get<int>();
  R.order_match = match_from(text(member(j, "order_match", "loop report"), "order_match"),
                             "loop report");
  R.h0_match = match_from(text(member(j, "h0_match", "loop report"), "h0_match"), "loop report");
  R.loop_homology = homology_from_json(member(j, "loop_homology", "loop report"));
  R.pi1 = pi1_from_json(member(j, "pi1", "loop report"));
  R.q = q_report_from_json(member(j, "q", "loop report"));
  return R;
}

inline Json deloop_report_to_json(const DeloopReport& R, int truncation, int k_max) {
  Json j;
  j["group"] = R.group;
  j["group_witness"] = R.group_witness;
  j["translations_ok"] = R.translations_ok();
  j["left_translations"] = Json::array();
  for (QVerdict v : R.left_translations)
    j["left_translations"].push_back(iodetail::verdict_string(v));
  j["right_translations"] = Json::array();
  for (QVerdict v : R.right_translations)
    j["right_translations"].push_back(iodetail::verdict_string(v));
  j["loop"] = R.loop ? loop_report_to_json(*R.loop, truncation, k_max) : Json(nullptr);
  return j;
}

inline DeloopReport deloop_report_from_json(const Json& j) {
  using namespace iodetail;
  DeloopReport R;
  R.group = member(j, "group", "deloop report").get<bool>();
  R.group_witness = text(member(j, "group_witness", "deloop report"), "group_witness");
  for (const Json& v : member(j, "left_translations", "deloop report"))
    R.left_translations.push_back(verdict_from(text(v, "translation verdict"), "deloop report"));
  for (const Json& v : member(j, "right_translations", "deloop report"))
    R.right_translations.push_back(verdict_from(text(v, "translation verdict"), "deloop report"));
  const Json& loop = member(j, "loop", "deloop report");
  if (!loop.is_null()) R.loop = loop_report_from_json(loop);
  return R;
}

}  // namespace fincat

#endif
