#include <chrono>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "dualint/io.hpp"

using namespace dualint;

namespace {

// Exit codes above the verdict range.
constexpr int kExitUsage = 3;
constexpr int kExitResource = 4;
constexpr int kExitInternal = 5;

std::vector<unsigned long> parse_primes(const std::string& s) {
  std::vector<unsigned long> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size()) throw UsageError("'" + tok + "' is not a prime");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty prime list");
  return out;
}

unsigned long parse_count(const std::string& what, const std::string& s) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty() || s[0] == '-') throw UsageError(what + " '" + s + "' is not a nonnegative integer");
  return v;
}

// Defaults from DUALINT_BOX, DUALINT_DENOM_CAP and DUALINT_PRIMES.
SearchBudget budget_from_env() {
  SearchBudget b;
  if (const char* v = std::getenv("DUALINT_BOX")) b.weight_box = parse_count("DUALINT_BOX", v);
  if (const char* v = std::getenv("DUALINT_DENOM_CAP")) b.denominator_cap = parse_count("DUALINT_DENOM_CAP", v);
  if (const char* v = std::getenv("DUALINT_PRIMES")) b.prime_sample = parse_primes(v);
  return b;
}

IntVec parse_ints(const std::vector<std::string>& parts, const std::string& what) {
  IntVec v;
  for (const std::string& p : parts) {
    Int x;
    if (p.empty() || x.set_str(p, 10) != 0) throw UsageError(what + ": '" + p + "' is not an integer");
    v.push_back(x);
  }
  return v;
}

IndexSet parse_rows(const std::vector<std::string>& parts, const LinearSystem& sys, const std::string& what) {
  IndexSet I;
  for (const std::string& p : parts) {
    const unsigned long k = parse_count(what, p);
    if (k < 1 || k > sys.m()) throw UsageError(what + ": row " + p + " outside 1.." + std::to_string(sys.m()));
    I.push_back(k - 1);
  }
  return normalized(I);
}

// The face with tight set exactly I; anything else is a usage error.
Face face_arg(const LinearSystem& sys, const IndexSet& I, const std::string& what) {
  const Face F = face_from_tight(sys, I);
  if (F.is_empty()) throw UsageError(what + " " + index_set_string(I) + " is not a face (no point is tight on it)");
  if (F.tight_set != I)
    throw UsageError(what + " " + index_set_string(I) + " is not a tight set; the face it defines is " +
                     index_set_string(F.tight_set));
  return F;
}

std::string rat_vec_string(const RatVec& v) { return to_string(v); }

// sum coeff_k u_{i_k} = rhs with 1-based variable names
std::string equation_string(const TiltConstraint& t) {
  std::string s;
  for (std::size_t k = 0; k < t.coeff.size(); ++k) {
    const Int& c = t.coeff[k];
    if (c == 0) continue;
    const Int a = abs(c);
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (a != 1) s += a.get_str() + " ";
    s += "u" + std::to_string(t.index_set[k] + 1);
  }
  if (s.empty()) s = "0";
  return s + " = " + t.rhs.get_str();
}

void print_verdict(std::ostream& out, const Verdict& v) {
  out << "property: " << to_string(v.property);
  if (v.L) out << " over " << v.L->name();
  out << "\nstatus: " << to_string(v.status) << "\n";
  if (!v.rule.empty()) out << "rule: " << v.rule << "\n";
  out << "reason: " << v.reason << "\n";
  if (v.bad_weight) out << "bad weight: " << to_string(*v.bad_weight) << " (" << v.bad_weight_domain.value_or("") << ")\n";
  if (v.alternative) out << "alternative certificate: " << rat_vec_string(*v.alternative) << "\n";
  if (v.gsc_counterexample) out << "generating-set counterexample: " << to_string(*v.gsc_counterexample) << "\n";
  if (v.failing_row) out << "failing row: " << *v.failing_row + 1 << "\n";
  if (v.resiliency) {
    out << "least in-shifts:";
    for (const RowShift& r : v.resiliency->rows)
      out << " " << (r.s ? std::to_string(*r.s) : std::string("-")) << (r.vacuous ? "*" : "");
    out << "\n";
  }
  for (const BadWeightSearch& b : v.searches)
    out << "scan " << b.domain << ", |w_j| <= " << b.weight_box << ": " << b.weights_checked << " weights, "
        << b.admissible << " admissible, " << b.undecided << " inconclusive\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Common {
  std::string path;
  bool json = false;
};

int run_analyze(const Common& c, const std::string& check, const SearchBudget& budget,
                const std::optional<std::vector<unsigned long>>& primes) {
  const auto t0 = std::chrono::steady_clock::now();
  const LinearSystem sys = parse_system_json(read_file(c.path));
  budget.validate();
  Verdict v;
  if (check == "tdi") {
    v = check_TDI(sys, budget);
  } else if (check == "tdd") {
    v = check_TDD(sys, budget);
  } else if (check == "near-tdi") {
    v = near_TDI_sample(sys, budget);
  } else {
    v = check_TD_in_L(sys, LSpec::primes(primes ? *primes : budget.prime_sample), budget);
  }
  if (c.json) {
    Json r{{"schema", kReportSchema},
           {"command", "analyze"},
           {"check", check},
           {"input", Json{{"path", c.path}, {"system", to_json(sys)}}},
           {"budget", to_json(budget)},
           {"verdicts", Json::array({to_json(v)})},
           {"exit_code", exit_code(v.status)},
           {"timing", Json{{"seconds", seconds_since(t0)}}}};
    std::cout << r.dump(2) << "\n";
  } else {
    std::cout << "system: " << sys.m() << " rows, " << sys.n() << " columns\n";
    print_verdict(std::cout, v);
  }
  return exit_code(v.status);
}

LSpec parse_L(const std::string& s) {
  if (s == "Z" || s == "z") return LSpec::integers();
  return LSpec::primes(parse_primes(s));
}

int run_tilt(const Common& c, const std::vector<std::string>& w_arg, const std::vector<std::string>& face_arg_s,
             const std::vector<std::string>& down_arg, const std::vector<std::string>& L_args,
             unsigned long max_gap) {
  const auto t0 = std::chrono::steady_clock::now();
  const LinearSystem sys = parse_system_json(read_file(c.path));
  const IntVec w = parse_ints(w_arg, "--w");
  if (w.size() != sys.n()) throw UsageError("--w needs " + std::to_string(sys.n()) + " entries");
  const Face F = face_arg(sys, parse_rows(face_arg_s, sys, "--face"), "--face");
  const Face Fp = face_arg(sys, parse_rows(down_arg, sys, "--downface"), "--downface");
  const RatVec wr = to_rat(std::span<const Int>(w));
  const TiltConstraint t = tilt_constraint(sys, wr, F, Fp);

  std::vector<LSpec> Ls;
  for (const std::string& s : L_args) Ls.push_back(parse_L(s));
  std::vector<std::pair<LSpec, SingleEqResult>> solv;
  for (const LSpec& L : Ls) solv.emplace_back(L, tilt_solvable(t, L));

  std::optional<Brace> br;
  std::optional<RatVec> from_brace;
  const PolyhedronSummary s = summarize(sys);
  if (integrality(sys, s).integral) {
    br = find_brace(sys, s, F, Fp, max_gap);
    if (br) from_brace = brace_to_tilt_solution(sys, wr, F, Fp, *br);
  }

  if (c.json) {
    Json sj = Json::array();
    for (const auto& [L, r] : solv)
      sj.push_back(Json{{"L", to_json(L)}, {"solvable", r.solvable},
                        {"witness", r.solvable ? to_json(r.witness) : Json(nullptr)}});
    Json bj = nullptr;
    if (br)
      bj = Json{{"row", br->i_hat + 1}, {"rho", to_json(br->rho)}, {"gap", to_json(br->gap)},
                {"solution", to_json(*from_brace)}};
    Json r{{"schema", kReportSchema},
           {"command", "tilt"},
           {"input", Json{{"path", c.path}, {"system", to_json(sys)}}},
           {"w", to_json(w)},
           {"face", Json{{"tight_set", index_json(F.tight_set)}, {"dim", F.dim}}},
           {"downface", Json{{"tight_set", index_json(Fp.tight_set)}, {"dim", Fp.dim}}},
           {"tilt", Json{{"variables", index_json(t.index_set)},
                         {"coefficients", to_json(t.coeff)},
                         {"rhs", to_json(t.rhs)},
                         {"equation", equation_string(t)},
                         {"rho", to_json(t.rho)},
                         {"optimal_value", to_json(t.tau)}}},
           {"solvability", sj},
           {"brace", bj},
           {"brace_max_gap", max_gap},
           {"timing", Json{{"seconds", seconds_since(t0)}}}};
    std::cout << r.dump(2) << "\n";
    return 0;
  }
  std::cout << "F = " << index_set_string(F.tight_set) << " (dim " << F.dim << "), F+ = "
            << index_set_string(Fp.tight_set) << " (dim " << Fp.dim << ")\n";
  std::cout << "tilt constraint: " << equation_string(t) << "\n";
  std::cout << "rho = " << rat_vec_string(t.rho) << ", optimal value " << t.tau.get_str() << "\n";
  for (const auto& [L, r] : solv) {
    std::cout << "over " << L.name() << ": ";
    if (r.solvable)
      std::cout << "solvable, u = " << rat_vec_string(r.witness) << "\n";
    else
      std::cout << "no solution\n";
  }
  if (br)
    std::cout << "brace: row " << br->i_hat + 1 << ", rho = " << to_string(br->rho) << ", gap " << br->gap.get_str()
              << ", solution u = " << rat_vec_string(*from_brace) << "\n";
  else
    std::cout << "brace: none with gap <= " << max_gap << "\n";
  return 0;
}

int run_clutter(const Common& c, bool want_blocker, bool want_ideal, bool want_profile, bool want_tdd,
                const SearchBudget& budget) {
  const auto t0 = std::chrono::steady_clock::now();
  const Clutter C = parse_clutter_text(read_file(c.path));
  if (!want_blocker && !want_ideal && !want_profile && !want_tdd) want_blocker = want_ideal = want_profile = true;
  if (want_ideal || want_profile || want_tdd) C.require_nondegenerate();
  budget.validate();

  Json r{{"schema", kReportSchema}, {"command", "clutter"}, {"input", Json{{"path", c.path}, {"clutter", to_json(C)}}}};
  int code = 0;
  std::ostringstream text;
  text << "clutter: " << C.to_string() << " on " << C.ground_size() << " elements\n";
  if (want_blocker) {
    const Clutter B = blocker(C);
    r["blocker"] = to_json(B);
    text << "blocker: " << B.to_string() << "\n";
  }
  if (want_ideal) {
    const IdealReport ir = ideal_report(C);
    r["ideal"] = Json{{"ideal", ir.ideal},
                      {"fractional_vertex", ir.fractional_vertex ? to_json(*ir.fractional_vertex) : Json(nullptr)}};
    text << "ideal: " << (ir.ideal ? "yes" : "no");
    if (ir.fractional_vertex) text << ", fractional vertex " << rat_vec_string(*ir.fractional_vertex);
    text << "\n";
  }
  if (want_profile) {
    const IntersectionProfile p = intersection_profile(C);
    r["profile"] = Json{{"max_intersection", p.max_SB}, {"all_minus_one_in_P", p.all_in_P}, {"binary", p.binary}};
    text << "max |S∩B| = " << p.max_SB << ", every |S∩B| - 1 in {0,1,2,4,...}: " << (p.all_in_P ? "yes" : "no")
         << ", binary: " << (p.binary ? "yes" : "no") << "\n";
  }
  if (want_tdd) {
    const ClutterTddReport t = verify_TDD_clutter(C, budget);
    r["budget"] = to_json(budget);
    r["verdicts"] = Json::array({to_json(t.verdict)});
    code = exit_code(t.verdict.status);
    print_verdict(text, t.verdict);
  }
  r["exit_code"] = code;
  r["timing"] = Json{{"seconds", seconds_since(t0)}};
  if (c.json)
    std::cout << r.dump(2) << "\n";
  else
    std::cout << text.str();
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of total dual integrality and its relatives for Mx <= b"};
  app.require_subcommand(1);
  Common common;

  SearchBudget budget;
  try {
    budget = budget_from_env();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::string primes_s, box_s, cap_s;

  auto* analyze = app.add_subcommand("analyze", "decide or search TDI, TDD, near-TDI or TD in L(S)");
  std::string check = "tdi";
  analyze->add_option("path", common.path, "system JSON {\"M\": [[int]], \"b\": [int]}")->required();
  analyze->add_option("--check", check, "property to check")
      ->check(CLI::IsMember({"tdi", "tdd", "near-tdi", "td-in-l"}));
  analyze->add_option("--primes", primes_s, "prime set: L(S) for td-in-l, sampled primes for near-tdi");
  analyze->add_option("--box", box_s, "weight box W (all |w_j| <= W)");
  analyze->add_option("--denom-cap", cap_s, "witness denominators up to 2^K");
  analyze->add_flag("--json", common.json, "print the JSON report");

  auto* tilt = app.add_subcommand("tilt", "tilt constraint of a face and a down-face");
  std::vector<std::string> w_arg, face_s, down_s, L_args;
  unsigned long max_gap = 8;
  tilt->add_option("path", common.path, "system JSON")->required();
  tilt->add_option("--w", w_arg, "weight, comma separated")->required()->delimiter(',');
  tilt->add_option("--face", face_s, "tight set of F, 1-based rows")->required()->delimiter(',');
  tilt->add_option("--downface", down_s, "tight set of F+, 1-based rows")->required()->delimiter(',');
  tilt->add_option("--L", L_args, "Z or a comma separated prime set; repeatable (default Z and 2)");
  tilt->add_option("--max-gap", max_gap, "largest brace gap searched");
  tilt->add_flag("--json", common.json, "print the JSON report");

  auto* clutter = app.add_subcommand("clutter", "blocker, idealness, intersection profile and TDD of a clutter");
  bool want_blocker = false, want_ideal = false, want_profile = false, want_tdd = false;
  clutter->add_option("path", common.path, "clutter text file: n, then one member per line")->required();
  clutter->add_flag("--blocker", want_blocker, "minimal covers");
  clutter->add_flag("--ideal", want_ideal, "integrality of the covering polyhedron");
  clutter->add_flag("--profile", want_profile, "max |S∩B| over members and minimal covers");
  clutter->add_flag("--tdd", want_tdd, "total dual dyadicness");
  clutter->add_option("--box", box_s, "weight box W (w in [0, W]^n)");
  clutter->add_flag("--json", common.json, "print the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    std::optional<std::vector<unsigned long>> primes;
    if (!primes_s.empty()) primes = parse_primes(primes_s);
    if (!box_s.empty()) budget.weight_box = parse_count("--box", box_s);
    if (!cap_s.empty()) budget.denominator_cap = parse_count("--denom-cap", cap_s);
    if (primes && check == "near-tdi") budget.prime_sample = *primes;

    if (analyze->parsed()) return run_analyze(common, check, budget, primes);
    if (tilt->parsed()) {
      if (L_args.empty()) L_args = {"Z", "2"};
      return run_tilt(common, w_arg, face_s, down_s, L_args, max_gap);
    }
    return run_clutter(common, want_blocker, want_ideal, want_profile, want_tdd, budget);
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const ParseError& e) {
    std::cerr << common.path << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
