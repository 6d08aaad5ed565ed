#include "bernoullik/cli.hpp"

#include <algorithm>
#include <sstream>

#include "CLI11.hpp"

#include "bernoullik/error.hpp"
#include "bernoullik/io.hpp"
#include "bernoullik/karoubi.hpp"
#include "bernoullik/ktheory.hpp"
#include "bernoullik/slnz.hpp"

namespace bernoullik::cli {

namespace {

using io::Json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GroupOptions {
  std::string file;
  std::size_t cyclic = 0;
  std::size_t symmetric = 0;
  std::size_t dihedral = 0;

  void attach(CLI::App* app) {
    app->add_option("--group", file, "JSON file with degree and generators");
    app->add_option("--cyclic", cyclic, "cyclic group of order m");
    app->add_option("--symmetric", symmetric, "symmetric group on n points");
    app->add_option("--dihedral", dihedral, "dihedral group of order 2n");
  }

  std::optional<PermGroup> resolve() const {
    int given = !file.empty() + (cyclic != 0) + (symmetric != 0) + (dihedral != 0);
    if (given > 1) throw UsageError("give at most one of --group, --cyclic, --symmetric, --dihedral");
    if (!file.empty()) return io::group_from_json(io::read_file(file));
    if (cyclic) return PermGroup::cyclic(cyclic);
    if (symmetric) return PermGroup::symmetric(symmetric);
    if (dihedral) return PermGroup::dihedral(dihedral);
    return std::nullopt;
  }

  PermGroup require() const {
    auto g = resolve();
    if (!g) throw UsageError("a group is required (--group, --cyclic, --symmetric or --dihedral)");
    return *g;
  }
};

struct SetOptions {
  std::string gset;
  std::optional<std::size_t> max_subset_size;
  std::string window;

  void attach(CLI::App* app, const std::string& default_gset) {
    app->add_option("--gset", gset, "regular, regular:<m>, regular:omega, or a JSON file (default " + default_gset + ")");
    app->add_option("--max-subset-size", max_subset_size, "largest subset size enumerated");
    app->add_option("--window", window, "copies realized for omega pieces: 3 or 0:2,1:5");
  }

  GSetSpec spec(const PermGroup& g, const std::string& default_gset = "regular") const {
    const std::string gset = this->gset.empty() ? default_gset : this->gset;
    if (gset == "regular") return GSetSpec::regular(g);
    if (gset.rfind("regular:", 0) == 0) {
      const std::string m = gset.substr(8);
      if (m == "omega") return GSetSpec{g, {GSetPiece{g.trivial_subgroup(), std::nullopt}}};
      std::size_t copies = 0;
      try {
        copies = std::stoul(m);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, "bad multiplicity in --gset " + gset);
      }
      if (copies == 0) throw Error(ErrorKind::InvalidInput, "multiplicity must be positive");
      return GSetSpec{g, {GSetPiece{g.trivial_subgroup(), copies}}};
    }
    return io::gset_from_json(g, io::read_file(gset));
  }

  Truncation truncation() const {
    Truncation t;
    t.max_subset_size = max_subset_size;
    if (!window.empty()) t.window = Window::parse(window);
    return t;
  }
};

std::vector<Int> parse_ints(const std::string& text, const std::string& what) {
  std::vector<Int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.emplace_back(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidInput, "bad integer '" + item + "' in " + what);
    }
  }
  if (out.empty()) throw Error(ErrorKind::InvalidInput, what + " is empty");
  return out;
}

KReport localized_report(KReport r, const std::string& localize_text) {
  if (localize_text.empty()) return r;
  const Supernatural s = Supernatural::parse(localize_text);
  if (s.is_one()) return r;
  for (KTerm& t : r.terms) t.value = localize(t.value, s);
  if (r.determined) r.total = localize(r.total, s);
  r.params["localize"] = s.to_string();
  return r;
}

void emit_report(const KReport& r, const std::string& format, std::ostream& out) {
  if (format == "json") out << io::report_to_json(r).dump(2) << '\n';
  else out << r.to_text();
}

void emit_graded(const std::string& what, const GradedAb& a, const std::string& format, std::ostream& out) {
  if (format == "json") out << Json{{"result", what}, {"value", io::graded_to_json(a)}}.dump(2) << '\n';
  else out << what << ": " << a.to_string() << '\n';
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CapExceeded: return kExitCap;
    case ErrorKind::Internal: return kExitInternal;
    default: return kExitValidation;
  }
}

void run_slnz(const std::string& k_text, const std::string& format, std::ostream& out) {
  const std::vector<Int> k = parse_ints(k_text, "--k");
  const IntMatrix x = slnz_matrix(k);
  Int n = 0;
  for (const Int& v : k) n = boost::multiprecision::gcd(n, v);
  const Int det = x.determinant();
  std::optional<EuclidResult> euclid;
  std::optional<IntMatrix> swapped;
  if (k.size() == 2) {
    euclid = euclid_matrix(k[0], k[1]);
    swapped = gl2_solutions(k[0], k[1]).second;
  }
  if (format == "json") {
    Json j{{"k", k_text}, {"gcd", n.str()}, {"matrix", io::matrix_to_json(x)}, {"det", det.str()},
           {"valid", is_nonneg_solution(x, k)}};
    if (euclid) {
      j["word"] = euclid->word.to_string();
      j["gl2_other"] = io::matrix_to_json(*swapped);
    }
    out << j.dump(2) << '\n';
    return;
  }
  out << "X = " << x.to_string() << '\n';
  out << "gcd = " << n.str() << '\n';
  out << "det = " << det.str() << '\n';
  out << "X (n,...,n)^T = k: " << (is_nonneg_solution(x, k) ? "yes" : "no") << '\n';
  if (euclid) {
    out << "word = " << euclid->word.to_string() << '\n';
    out << "GL(2,Z) partner = " << swapped->to_string() << '\n';
  }
}

void run_karoubi(const PermGroup& g, const std::string& set, const std::string& points, const std::string& format,
                 std::ostream& out) {
  KaroubiRank r;
  if (set == "regular") {
    r = euclidean_rank_regular(g);
  } else if (set == "natural") {
    r = euclidean_rank_natural(g);
  } else if (set == "explicit") {
    Subset x;
    for (const Int& p : parse_ints(points, "--points")) {
      if (p < 0 || p >= g.degree()) throw Error(ErrorKind::InvalidInput, "point out of range");
      x.push_back(static_cast<Point>(p));
    }
    r = euclidean_rank(FiniteAction::natural(g), g.whole(), x);
  } else {
    throw UsageError("--set must be regular, natural or explicit");
  }
  if (format == "json") {
    Json classes = Json::array();
    for (const auto& c : r.per_class) {
      classes.push_back(Json{{"representative", c.representative.to_string()}, {"size", c.class_size},
                             {"fixed_dim", c.fixed_dim}, {"oriented", c.oriented}});
    }
    out << Json{{"classes", classes}, {"rank0", r.rank0}, {"rank1", r.rank1}}.dump(2) << '\n';
    return;
  }
  out << "class\tsize\tfixed_dim\toriented\n";
  for (const auto& c : r.per_class) {
    out << c.representative.to_string() << '\t' << c.class_size << '\t' << c.fixed_dim << '\t'
        << (c.oriented ? "yes" : "no") << '\n';
  }
  out << "K^0 rank = " << r.rank0 << '\n';
  out << "K^1 rank = " << r.rank1 << '\n';
}

GradedAb run_pushout(const Json& j, const Supernatural& s) {
  if (j.contains("reduced")) {
    return af_pushout_torsion_free(io::graded_from_json(j.at("reduced")), io::graded_from_json(j.at("coinvariants")),
                                   s);
  }
  auto m = [&](const char* key) { return j.contains(key) ? io::matrix_from_json(j.at(key)) : IntMatrix(0, 0); };
  return af_pushout(io::graded_from_json(j.at("colim_group")), io::graded_from_json(j.at("colim_shift")),
                    io::graded_from_json(j.at("k_group")), s, m("f0"), m("f1"), m("g0"), m("g1"));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact K-theory calculator for Bernoulli shift crossed products", "bernoullik"};
  app.set_help_all_flag("--help-all");
  bool run_selftest = false;
  std::string format = "text";
  app.add_flag("--selftest", run_selftest, "run the built-in cross-check batteries");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.fallthrough();

  GroupOptions group;
  SetOptions set;
  std::size_t n = 1;
  std::string form = "orbit";
  std::string k_text;
  std::string variant;
  std::string base_file;
  std::size_t base_cyclic = 0, base_symmetric = 0, free_rank = 0;
  bool free_given = false;
  std::string diagram_file, input_file, localize_text = "1", report_localize;
  std::string karoubi_set = "regular", points;
  std::string k0_text, unit_text;
  std::size_t r_max = 8;
  std::string b_free, b_k0, b_k1 = "0";

  auto* cantor = app.add_subcommand("cantor", "C({0..n}^Z) crossed by G");
  group.attach(cantor);
  set.attach(cantor, "regular");
  cantor->add_option("--n", n, "labels besides 0")->capture_default_str();
  cantor->add_option("--form", form, "orbit or conjugacy")->check(CLI::IsMember({"orbit", "conjugacy"}));

  auto* findim = app.add_subcommand("findim", "direct sum of matrix algebras over an infinite G-set");
  group.attach(findim);
  set.attach(findim, "regular:omega");
  findim->add_option("--k", k_text, "block sizes, comma separated")->required();

  auto* fibonacci = app.add_subcommand("fibonacci", "Fibonacci algebra or the unitized compacts");
  group.attach(fibonacci);
  set.attach(fibonacci, "regular");

  auto* circle_cmd = app.add_subcommand("circle", "C(S^1)");
  group.attach(circle_cmd);
  set.attach(circle_cmd, "regular");

  auto* rotation_cmd = app.add_subcommand("rotation", "rotation algebra");
  group.attach(rotation_cmd);
  set.attach(rotation_cmd, "regular");

  auto* wreath_cmd = app.add_subcommand("wreath", "wreath product H wr G");
  group.attach(wreath_cmd);
  set.attach(wreath_cmd, "regular");
  wreath_cmd->add_option("--base", base_file, "JSON file for H");
  wreath_cmd->add_option("--base-cyclic", base_cyclic, "H cyclic of this order");
  wreath_cmd->add_option("--base-symmetric", base_symmetric, "H symmetric on this many points");
  wreath_cmd->add_option("--free", free_rank, "H free on this many generators")->each([&](const std::string&) {
    free_given = true;
  });

  auto* cuntz = app.add_subcommand("cuntz", "Cuntz algebra shifts");
  group.attach(cuntz);
  set.attach(cuntz, "regular");
  cuntz->add_option("--variant", variant, "o_infinity, o2, z2_table, z2_table_suspended, one_plus_on")
      ->required()
      ->check(CLI::IsMember({"o_infinity", "o2", "z2_table", "z2_table_suspended", "one_plus_on"}));
  cuntz->add_option("--n", n, "Cuntz parameter")->capture_default_str();

  auto* colim = app.add_subcommand("colim", "orbit-category colimit or a user diagram");
  group.attach(colim);
  colim->add_option("--diagram", diagram_file, "JSON diagram");

  auto* pushout_cmd = app.add_subcommand("pushout", "pushout square for AF algebras");
  pushout_cmd->add_option("--input", input_file, "JSON square")->required();
  pushout_cmd->add_option("--localize", localize_text, "supernatural number, e.g. 2^inf,3")->capture_default_str();

  auto* slnz = app.add_subcommand("slnz", "non-negative SL(N+1,Z) matrix for block sizes");
  slnz->add_option("--k", k_text, "block sizes, comma separated")->required();

  auto* karoubi = app.add_subcommand("karoubi", "Karoubi ranks of equivariant K-theory of R^X");
  group.attach(karoubi);
  karoubi->add_option("--set", karoubi_set, "regular, natural or explicit")->capture_default_str();
  karoubi->add_option("--points", points, "points of the natural action for --set explicit");

  auto* zero = app.add_subcommand("zero", "vanishing criterion for the unit in a tensor power");
  group.attach(zero);
  set.attach(zero, "regular:omega");
  zero->add_option("--k0", k0_text, "K_0(A), e.g. Z/4")->required();
  zero->add_option("--unit", unit_text, "coordinates of [1] in the generators of K_0(A)")->required();
  zero->add_option("--r-max", r_max, "largest tensor power tried")->capture_default_str();

  auto* localized = app.add_subcommand("localized", "UCT reduction localized at a supernatural number");
  group.attach(localized);
  set.attach(localized, "regular");
  localized->add_option("--b-free", b_free, "copies of C and of C_0(R) in B, e.g. 1,2");
  localized->add_option("--b-k0", b_k0, "K_0(B) for a custom B");
  localized->add_option("--b-k1", b_k1, "K_1(B) for a custom B")->capture_default_str();
  localized->add_option("--localize", localize_text, "supernatural number, e.g. 2^inf,3")->capture_default_str();

  for (auto* sub : {cantor, findim, fibonacci, circle_cmd, rotation_cmd, wreath_cmd, cuntz, colim, pushout_cmd, slnz,
                    karoubi, zero, localized}) {
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  }
  for (auto* sub : {cantor, findim, fibonacci, circle_cmd, rotation_cmd, wreath_cmd, cuntz, colim, zero}) {
    sub->add_option("--localize", report_localize, "supernatural number, e.g. 2^inf,3");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  auto emit_report_loc = [&](const KReport& r, const std::string& fmt, std::ostream& os) {
    emit_report(localized_report(r, report_localize), fmt, os);
  };

  try {
    if (run_selftest) return selftest(out) == 0 ? kExitOk : 1;
    if (app.get_subcommands().empty()) throw UsageError("a command is required; see --help");

    if (*cantor) {
      PermGroup g = group.require();
      if (form == "conjugacy") {
        if (!set.gset.empty() && set.gset != "regular") throw UsageError("the conjugacy form needs --gset regular");
        emit_report_loc(cantor_conjugacy_form(g, n), format, out);
      } else {
        emit_report_loc(cantor_orbit_form(set.spec(g), n, set.truncation()), format, out);
      }
    } else if (*findim) {
      PermGroup g = group.require();
      emit_report_loc(finite_dim(set.spec(g, "regular:omega"), parse_ints(k_text, "--k"), set.truncation()), format, out);
    } else if (*fibonacci) {
      PermGroup g = group.require();
      emit_report_loc(fibonacci_like(set.spec(g), set.truncation()), format, out);
    } else if (*circle_cmd) {
      PermGroup g = group.require();
      emit_report_loc(circle(set.spec(g), set.truncation()), format, out);
    } else if (*rotation_cmd) {
      PermGroup g = group.require();
      emit_report_loc(rotation(set.spec(g), set.truncation()), format, out);
    } else if (*wreath_cmd) {
      PermGroup g = group.require();
      int given = !base_file.empty() + (base_cyclic != 0) + (base_symmetric != 0) + free_given;
      if (given != 1) throw UsageError("give exactly one of --base, --base-cyclic, --base-symmetric, --free");
      if (free_given) {
        emit_report_loc(wreath_free(free_rank, g, set.truncation()), format, out);
      } else {
        PermGroup h = !base_file.empty() ? io::group_from_json(io::read_file(base_file))
                      : base_cyclic      ? PermGroup::cyclic(base_cyclic)
                                         : PermGroup::symmetric(base_symmetric);
        emit_report_loc(wreath(h, g), format, out);
      }
    } else if (*cuntz) {
      if (variant == "z2_table" || variant == "z2_table_suspended") {
        emit_report_loc(cuntz_z2_table(n, variant == "z2_table_suspended"), format, out);
      } else {
        PermGroup g = group.resolve().value_or(PermGroup::trivial());
        if (variant == "o_infinity") emit_report_loc(cuntz_o_infinity(g), format, out);
        else if (variant == "o2") emit_report_loc(cuntz_o2(g), format, out);
        else emit_report_loc(cuntz_one_plus_on(n, set.spec(g), set.truncation()), format, out);
      }
    } else if (*colim) {
      GradedAb c = !diagram_file.empty() ? colimit(io::diagram_from_json(io::read_file(diagram_file)))
                                         : orbit_colim(group.require());
      if (!report_localize.empty()) c = localize(c, Supernatural::parse(report_localize));
      emit_graded("colimit", c, format, out);
    } else if (*pushout_cmd) {
      emit_graded("pushout", run_pushout(io::read_file(input_file), Supernatural::parse(localize_text)), format, out);
    } else if (*slnz) {
      run_slnz(k_text, format, out);
    } else if (*karoubi) {
      run_karoubi(group.require(), karoubi_set, points, format, out);
    } else if (*zero) {
      PermGroup g = group.resolve().value_or(PermGroup::trivial());
      emit_report_loc(zero_theorem(Ab::parse(k0_text), parse_ints(unit_text, "--unit"), r_max, set.spec(g, "regular:omega")), format, out);
    } else if (*localized) {
      PermGroup g = group.require();
      BSpec b;
      if (!b_free.empty()) {
        auto v = parse_ints(b_free, "--b-free");
        if (v.size() != 2 || v[0] < 0 || v[1] < 0) throw UsageError("--b-free takes two counts, e.g. 1,2");
        b = BSpec::free_b(v[0].convert_to<std::size_t>(), v[1].convert_to<std::size_t>());
      } else if (!b_k0.empty()) {
        b = BSpec::custom_b(GradedAb{Ab::parse(b_k0), Ab::parse(b_k1)});
      } else {
        throw UsageError("give --b-free or --b-k0");
      }
      emit_report_loc(localized_uct(set.spec(g), b, Supernatural::parse(localize_text), set.truncation()), format, out);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << "error: InvalidInput: " << e.what() << '\n';
    return kExitValidation;
  }
}

int selftest(std::ostream& out) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    out << (ok ? "ok   " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };
  auto guarded = [&](const std::string& name, const std::function<bool()>& f) {
    try {
      check(name, f());
    } catch (const std::exception& e) {
      check(name + " (" + e.what() + ")", false);
    }
  };

  const std::vector<std::pair<std::string, PermGroup>> battery = {
      {"Z/2", PermGroup::cyclic(2)},         {"Z/3", PermGroup::cyclic(3)},
      {"Z/4", PermGroup::cyclic(4)},         {"Z/2xZ/2", PermGroup::dihedral(2)},
      {"S_3", PermGroup::symmetric(3)},      {"D_4", PermGroup::dihedral(4)}};

  for (std::size_t m = 1; m <= 12; ++m) {
    guarded("karoubi Z/" + std::to_string(m) + " regular", [&] {
      KaroubiRank r = euclidean_rank_regular(PermGroup::cyclic(m));
      return r.rank0 == 0 && r.rank1 == (m % 2 ? m : m / 2);
    });
  }
  for (const auto& [name, g] : battery) {
    for (std::size_t n = 1; n <= 3; ++n) {
      guarded("cantor orbit = conjugacy form, G=" + name + " n=" + std::to_string(n), [&] {
        return cantor_orbit_form(GSetSpec::regular(g), n).total == cantor_conjugacy_form(g, n).total;
      });
    }
    guarded("fibonacci = cantor n=1, G=" + name, [&] {
      return fibonacci_like(GSetSpec::regular(g)).terms == cantor_orbit_form(GSetSpec::regular(g), 1).terms;
    });
    guarded("circle parity reduction, G=" + name, [&] { return !circle(GSetSpec::regular(g)).terms.empty(); });
    guarded("orbit colimit = K(C*_r(G)), G=" + name, [&] { return orbit_colim(g) == group_ktheory(g); });
    guarded("orientation by generators, G=" + name, [&] {
      KaroubiRank a = euclidean_rank_regular(g, OrientationCheck::AllElements);
      KaroubiRank b = euclidean_rank_regular(g, OrientationCheck::Generators);
      return a.rank0 == b.rank0 && a.rank1 == b.rank1;
    });
  }
  const std::vector<std::pair<std::string, std::pair<PermGroup, PermGroup>>> wreaths = {
      {"Z/2 wr Z/2", {PermGroup::cyclic(2), PermGroup::cyclic(2)}},
      {"Z/2 wr Z/3", {PermGroup::cyclic(2), PermGroup::cyclic(3)}},
      {"Z/3 wr Z/2", {PermGroup::cyclic(3), PermGroup::cyclic(2)}},
      {"Z/2 wr S_3", {PermGroup::cyclic(2), PermGroup::symmetric(3)}}};
  for (const auto& [name, hg] : wreaths) {
    guarded("wreath class count, " + name, [&] {
      return wreath(hg.first, hg.second).total == GradedAb::free(PermGroup::wreath(hg.first, hg.second).class_count());
    });
  }
  for (std::size_t p : {2, 3, 5, 7}) {
    guarded("z2 cuntz table dies at p=" + std::to_string(p), [&] {
      return localize(cuntz_z2_table(p, false).total, Supernatural::of(p)).is_zero() &&
             localize(cuntz_z2_table(p, true).total, Supernatural::of(p)).is_zero();
    });
  }
  out << (failures == 0 ? "selftest passed" : "selftest failed: " + std::to_string(failures)) << '\n';
  return failures;
}

}  // namespace bernoullik::cli
