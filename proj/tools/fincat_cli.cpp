// File-driven front end. Subcommands map 1:1 onto the library operations;
// reports go to stdout, errors to stderr. Exit codes: 0 success, 1 validation
// failure, 2 budget exhaustion, 3 schema error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fincat/fincat.hpp"

namespace fs = std::filesystem;
using namespace fincat;

namespace {

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read input file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("file '" + path + "' is not valid JSON: " + e.what());
  }
}

/// References inside a map file resolve relative to the map file itself.
std::function<Json(const std::string&)> loader_for(const std::string& map_path) {
  fs::path base = fs::path(map_path).parent_path();
  return [base](const std::string& ref) { return read_json((base / ref).string()); };
}

FinCategory load_category(const std::string& path) {
  Json j = read_json(path);
  if (json_kind(j) != "category")
    throw SchemaError("file '" + path + "' does not hold a category (found a " + json_kind(j) +
                      " schema)");
  return category_from_json(j);
}

/// 2-category commands accept plain categories (wrapped with discrete homs)
/// and monoidal categories (delooped to one object) as well.
Fin2Category load_two_category(const std::string& path) {
  Json j = read_json(path);
  std::string kind = json_kind(j);
  if (kind == "two-category") return two_category_from_json(j);
  if (kind == "category") return from_category(category_from_json(j));
  if (kind == "monoidal") {
    MonoidalData D = monoidal_from_json(j);
    return from_monoidal(D.M, D.t_obj, D.t_arr, D.unit);
  }
  throw SchemaError("file '" + path + "' does not hold a 2-category (found a " + kind +
                    " schema)");
}

LaxFromCat load_lax(const std::string& path) {
  Json j = read_json(path);
  if (json_kind(j) != "map")
    throw SchemaError("file '" + path + "' does not hold a map (found a " + json_kind(j) +
                      " schema)");
  MapData D = map_from_json(j, loader_for(path));
  return D.kind == "lax" ? D.lax : lax_from_functor(D.functor);
}

ObjId resolve_object(const std::vector<std::string>& names, int n, const std::string& basepoint,
                     const std::string& what) {
  if (basepoint.empty()) {
    if (n == 0) throw PreconditionError(what + ": the category has no objects");
    return 0;
  }
  for (int c = 0; c < n; ++c)
    if (c < (int)names.size() && names[c] == basepoint) return c;
  throw PreconditionError(what + ": no object named '" + basepoint + "'");
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct Options {
  std::string input;
  std::string second;
  int max_dim = 3;
  int kmax = -1;  // default: max_dim - 1
  long long mod = 0;
  long long budget = 5000000;
  int coset_budget = 10000;
  std::string format = "text";
  std::string basepoint;

  int effective_kmax() const { return kmax < 0 ? max_dim - 1 : kmax; }
  bool json() const { return format == "json"; }
};

void check_dispatch(const Options& opt) {
  if (opt.max_dim < 1) throw PreconditionError("--max-dim must be positive");
  if (opt.budget <= 0) throw PreconditionError("--budget must be positive");
  if (opt.coset_budget <= 0) throw PreconditionError("--coset-budget must be positive");
  if (opt.effective_kmax() > opt.max_dim - 1)
    throw PreconditionError("--kmax " + std::to_string(opt.effective_kmax()) +
                            " exceeds the reliable bound " + std::to_string(opt.max_dim - 1) +
                            " of truncation " + std::to_string(opt.max_dim));
  if (opt.format != "text" && opt.format != "json")
    throw SchemaError("--format must be text or json");
}

// ---------------------------------------------------------------------------
// Per-command handlers. Each returns the process exit code.
// ---------------------------------------------------------------------------

int cmd_validate(const Options& opt) {
  Json j = read_json(opt.input);
  std::string kind = json_kind(j);
  ValidationReport r;
  if (kind == "category") {
    r = validate(category_from_json(j));
  } else if (kind == "two-category") {
    r = validate2(two_category_from_json(j));
  } else if (kind == "monoidal") {
    MonoidalData D = monoidal_from_json(j);
    r = validate_strict_monoidal(D.M, D.t_obj, D.t_arr, D.unit);
  } else {
    MapData D = map_from_json(j, loader_for(opt.input));
    r = D.kind == "functor" ? validate_functor(D.functor) : validate_lax(D.lax);
  }
  if (opt.json())
    emit(validation_to_json(r));
  else
    std::cout << (r.ok() ? kind + " file '" + opt.input + "': valid\n" : r.to_string());
  return r.ok() ? 0 : 1;
}

void emit_face_list(const TruncatedSimplicialSet& X, const Options& opt) {
  if (!opt.json()) {
    std::cout << face_list(X);
    return;
  }
  Json j;
  j["truncation"] = X.max_dim;
  j["counts"] = Json::array();
  for (int n = 0; n <= X.max_dim; ++n) j["counts"].push_back(X.count(n));
  j["face_list"] = Json::array();
  std::istringstream lines(face_list(X));
  for (std::string line; std::getline(lines, line);) j["face_list"].push_back(line);
  emit(j);
}

int cmd_nerve(const Options& opt) {
  emit_face_list(nerve(load_category(opt.input), opt.max_dim), opt);
  return 0;
}

int cmd_gnerve(const Options& opt) {
  emit_face_list(geometric_nerve(load_two_category(opt.input), opt.max_dim, opt.budget), opt);
  return 0;
}

int cmd_nerve2(const Options& opt) {
  emit_face_list(compress_dense(diagonal(two_nerve(load_two_category(opt.input), opt.max_dim))),
                 opt);
  return 0;
}

int cmd_homology(const Options& opt) {
  Json j = read_json(opt.input);
  int k_max = opt.effective_kmax();
  TruncatedSimplicialSet X =
      json_kind(j) == "category"
          ? nerve(category_from_json(j), opt.max_dim)
          : geometric_nerve(load_two_category(opt.input), opt.max_dim, opt.budget);
  HomologySummary H;
  if (opt.mod) {
    std::vector<int> ranks = homology_mod(X, k_max, opt.mod);
    H.k_max = k_max;
    for (int r : ranks) H.degrees.push_back({r, {}});
  } else {
    H = homology(X, k_max);
  }
  if (opt.json()) {
    emit(homology_report(H, opt.max_dim, opt.mod));
  } else {
    std::cout << "truncation " << opt.max_dim << ", degrees certified through " << k_max << "\n"
              << (opt.mod ? "coefficients mod " + std::to_string(opt.mod) + "\n" : "")
              << homology_to_string(H);
  }
  return 0;
}

int cmd_subdivide(const Options& opt) {
  emit(category_to_json(subdivide(load_category(opt.input)).cat));
  return 0;
}

int cmd_sd2poset(const Options& opt) {
  bool poset = sd2_is_poset(load_category(opt.input));
  if (opt.json()) {
    Json j;
    j["sd2_is_poset"] = poset;
    emit(j);
  } else {
    std::cout << (poset ? "true\n" : "false\n");
  }
  return 0;
}

int cmd_tilde(const Options& opt) {
  emit(two_category_to_json(tilde(load_category(opt.input)).cat));
  return 0;
}

int cmd_univcheck(const Options& opt) {
  UniversalPropertyReport R =
      universal_property_check(load_category(opt.input), load_two_category(opt.second),
                               opt.budget);
  if (opt.json()) {
    Json j;
    j["ok"] = R.ok;
    j["n_strict"] = R.n_strict;
    j["n_lax"] = R.n_lax;
    j["detail"] = R.detail;
    emit(j);
  } else {
    std::cout << (R.ok ? "true" : "false") << " (" << R.n_strict << " strict vs " << R.n_lax
              << " lax)" << (R.detail.empty() ? "" : "\n" + R.detail) << "\n";
  }
  return 0;
}

int cmd_comma(const Options& opt) {
  Json j = read_json(opt.input);
  CatFunctor u;
  if (json_kind(j) == "map") {
    MapData D = map_from_json(j, loader_for(opt.input));
    if (D.kind != "functor")
      throw SchemaError("comma: map file '" + opt.input + "' must hold a functor");
    u = D.functor;
  } else {
    u = identity_functor(category_from_json(j));
  }
  ObjId d = resolve_object(u.target.obj_names, u.target.n_objects, opt.basepoint, "comma");
  emit(category_to_json(comma_over(u, d).cat));
  return 0;
}

int cmd_groth(const Options& opt) {
  Fin2Category T = load_two_category(opt.input);
  ObjId c = resolve_object(T.obj_names, T.n_objects, opt.basepoint, "groth");
  emit(category_to_json(path_fibration(T, c, opt.max_dim).groth.total));
  return 0;
}

int cmd_hofiber(const Options& opt) {
  LaxFromCat u = load_lax(opt.input);
  ObjId d = resolve_object(u.target.obj_names, u.target.n_objects, opt.basepoint, "hofiber");
  emit(category_to_json(homotopy_fiber_lax(u, d).cat));
  return 0;
}

int cmd_simplexcat(const Options& opt) {
  Json j = read_json(opt.input);
  if (json_kind(j) == "category")
    emit(category_to_json(delta_over(category_from_json(j), opt.max_dim).cat));
  else
    emit(category_to_json(delta2(load_two_category(opt.input), opt.max_dim).cat));
  return 0;
}

int cmd_condq(const Options& opt) {
  Fin2Category T = load_two_category(opt.input);
  ObjId c = resolve_object(T.obj_names, T.n_objects, opt.basepoint, "condq");
  QReport R = condition_q(T, c, opt.effective_kmax());
  if (opt.json())
    emit(q_report_to_json(R));
  else
    std::cout << "at object " << T.obj_name(c) << ":\n" << R.to_string();
  return 0;
}

int cmd_loopcheck(const Options& opt) {
  Fin2Category T = load_two_category(opt.input);
  ObjId c = resolve_object(T.obj_names, T.n_objects, opt.basepoint, "loopcheck");
  LoopReport R = loop_consistency(T, c, opt.max_dim, opt.effective_kmax(), opt.coset_budget,
                                  opt.budget);
  if (opt.json()) {
    emit(loop_report_to_json(R, opt.max_dim, opt.effective_kmax()));
    return 0;
  }
  std::string order = R.pi1.order_known          ? std::to_string(R.pi1.order)
                      : R.pi1.certified_infinite ? std::string("infinite")
                                                 : std::string("unknown");
  std::string verdict = (R.order_match == MatchVerdict::passed &&
                         R.h0_match == MatchVerdict::passed)
                            ? "CONSISTENT"
                        : (R.order_match == MatchVerdict::failed ||
                           R.h0_match == MatchVerdict::failed)
                            ? "INCONSISTENT"
                            : "UNDETERMINED";
  std::cout << "π₀(End)=" << R.loop_pi0 << ", π₁ order=" << order << ", " << verdict << "\n"
            << "truncation " << opt.max_dim << ", homology degrees through "
            << opt.effective_kmax() << "\n"
            << R.to_string();
  return 0;
}

int cmd_deloop(const Options& opt) {
  Json j = read_json(opt.input);
  if (json_kind(j) != "monoidal")
    throw SchemaError("deloop: file '" + opt.input +
                      "' must hold a monoidal category (unit and tensor keys)");
  MonoidalData D = monoidal_from_json(j);
  DeloopReport R = deloop_check(D.M, D.t_obj, D.t_arr, D.unit, opt.effective_kmax(), opt.max_dim,
                                opt.coset_budget, opt.budget);
  if (opt.json()) {
    emit(deloop_report_to_json(R, opt.max_dim, opt.effective_kmax()));
    return 0;
  }
  std::cout << "group: " << (R.group ? "true" : "false")
            << (R.group ? "" : " (" + R.group_witness + ")") << "\n"
            << "translations: " << (R.translations_ok() ? "all equivalences" : "refuted") << "\n";
  if (R.loop)
    std::cout << "loop comparison at the unique object:\n" << R.loop->to_string();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite category and 2-category toolkit"};
  app.require_subcommand(1);

  Options opt;
  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
    int positionals;
    bool basepoint;
  };
  const Command commands[] = {
      {"validate", "check a category, 2-category, monoidal, or map file", cmd_validate, 1, false},
      {"nerve", "face list of the nerve of a category", cmd_nerve, 1, false},
      {"gnerve", "face list of the geometric nerve of a 2-category", cmd_gnerve, 1, false},
      {"nerve2", "face list of the diagonal of the double nerve", cmd_nerve2, 1, false},
      {"homology", "homology of the nerve (category) or geometric nerve (2-category)",
       cmd_homology, 1, false},
      {"subdivide", "categorical subdivision sd(C), as a category file", cmd_subdivide, 1, false},
      {"sd2poset", "is sd(sd(C)) a poset?", cmd_sd2poset, 1, false},
      {"tilde", "the chain 2-category of C, as a 2-category file", cmd_tilde, 1, false},
      {"univcheck", "strict functors out of tilde(C) vs lax functors out of C", cmd_univcheck, 2,
       false},
      {"comma", "comma category over the basepoint, as a category file", cmd_comma, 1, true},
      {"groth", "Grothendieck total of the simplex-indexed hom construction", cmd_groth, 1, true},
      {"hofiber", "homotopy fiber of a (lax) functor over the basepoint", cmd_hofiber, 1, true},
      {"simplexcat", "category of simplices, as a category file", cmd_simplexcat, 1, false},
      {"condq", "condition Q at the basepoint", cmd_condq, 1, true},
      {"loopcheck", "loop space comparison at the basepoint", cmd_loopcheck, 1, true},
      {"deloop", "delooping criteria for a monoidal category file", cmd_deloop, 1, true},
  };

  const Command* chosen = nullptr;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("input", opt.input, "input file")->required();
    if (c.positionals > 1) sub->add_option("target", opt.second, "target file")->required();
    sub->add_option("--max-dim", opt.max_dim, "truncation bound N");
    sub->add_option("--kmax", opt.kmax, "top homology degree (default N-1)");
    sub->add_option("--mod", opt.mod, "prime modulus for coefficients");
    sub->add_option("--budget", opt.budget, "enumeration budget");
    sub->add_option("--coset-budget", opt.coset_budget, "coset table bound");
    sub->add_option("--format", opt.format, "text or json");
    if (c.basepoint)
      sub->add_option("--basepoint", opt.basepoint, "object name (default: first object)");
    sub->callback([&chosen, &c] { chosen = &c; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    check_dispatch(opt);
    return chosen->run(opt);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
