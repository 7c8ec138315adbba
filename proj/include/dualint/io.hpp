#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dualint/clutter.hpp"

namespace dualint {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

namespace detail {

inline std::size_t line_at(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

inline Int json_int(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Int(v.dump());
  if (v.is_number_float())
    throw UsageError(where + " = " + v.dump() +
                     " is not an integer; scale the row by a common denominator so every "
                     "entry (and its right-hand side) is integral");
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    if (s.find('/') != std::string::npos || s.find('.') != std::string::npos)
      throw UsageError(where + " = \"" + s +
                       "\" is not an integer; scale the row by a common denominator so every "
                       "entry (and its right-hand side) is integral");
    Int out;
    if (s.empty() || out.set_str(s, 10) != 0) throw UsageError(where + " = \"" + s + "\" is not an integer");
    return out;
  }
  throw UsageError(where + " must be an integer, got " + std::string(v.type_name()));
}

}  // namespace detail

// {"M": [[int]], "b": [int]}. Large integers may be given as decimal strings.
// Syntax errors carry the line; shape errors name the offending entry.
inline LinearSystem parse_system_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(detail::line_at(text, e.byte), e.what());
  }
  if (!doc.is_object()) throw UsageError("system input must be a JSON object with keys \"M\" and \"b\"");
  if (!doc.contains("M") || !doc.contains("b")) throw UsageError("system input needs keys \"M\" and \"b\"");
  const Json& jM = doc["M"];
  const Json& jb = doc["b"];
  if (!jM.is_array() || jM.empty()) throw UsageError("\"M\" must be a nonempty array of rows");
  if (!jb.is_array()) throw UsageError("\"b\" must be an array");
  const std::size_t m = jM.size();
  if (!jM[0].is_array() || jM[0].empty()) throw UsageError("M[0] must be a nonempty array");
  const std::size_t n = jM[0].size();
  IntMat M(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const Json& row = jM[i];
    if (!row.is_array() || row.size() != n)
      throw UsageError("M[" + std::to_string(i) + "] must have " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j)
      M(i, j) = detail::json_int(row[j], "M[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }
  if (jb.size() != m)
    throw UsageError("\"b\" has " + std::to_string(jb.size()) + " entries but M has " + std::to_string(m) + " rows");
  IntVec b(m);
  for (std::size_t i = 0; i < m; ++i) b[i] = detail::json_int(jb[i], "b[" + std::to_string(i) + "]");
  return LinearSystem(std::move(M), std::move(b));
}

// First non-comment line: n. Every further line: one member as 1-based
// elements separated by spaces. '#' starts a comment; a line "{}" or "-" is
// the empty member.
inline Clutter parse_clutter_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::vector<Member> members;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    auto number = [&](const std::string& t) {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(t, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != t.size() || t[0] == '-' || t[0] == '+') throw ParseError(lineno, "'" + t + "' is not a nonnegative integer");
      return static_cast<std::size_t>(v);
    };
    if (!n) {
      if (tokens.size() != 1) throw ParseError(lineno, "first line must hold only the ground set size n");
      n = number(tokens[0]);
      if (*n > kMaxBlockerGround)
        throw ParseError(lineno, "ground set size " + std::to_string(*n) + " exceeds " + std::to_string(kMaxBlockerGround));
      continue;
    }
    Member S;
    if (!(tokens.size() == 1 && (tokens[0] == "{}" || tokens[0] == "-"))) {
      for (const std::string& t : tokens) {
        const std::size_t e = number(t);
        if (e < 1 || e > *n)
          throw ParseError(lineno, "element " + t + " outside 1.." + std::to_string(*n));
        S.push_back(e - 1);
      }
    }
    members.push_back(std::move(S));
  }
  if (!n) throw ParseError(lineno == 0 ? 1 : lineno, "missing ground set size");
  try {
    return Clutter(*n, std::move(members));
  } catch (const ClutterInvariantError& e) {
    throw ClutterInvariantError(std::string("clutter input: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// ---- report serialization: integers as JSON numbers when they fit, rationals as "p/q"

inline Json to_json(const Int& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

inline Json to_json(const Rat& v) { return Json(v.get_str()); }

template <class T>
Json to_json(const std::vector<T>& v) {
  Json a = Json::array();
  for (const T& x : v) a.push_back(to_json(x));
  return a;
}

inline Json index_json(const IndexSet& s) {
  Json a = Json::array();
  for (std::size_t i : s) a.push_back(i + 1);
  return a;
}

inline IntVec int_vec_from_json(const Json& j) {
  IntVec v;
  for (const Json& x : j) v.push_back(detail::json_int(x, "entry"));
  return v;
}

inline RatVec rat_vec_from_json(const Json& j) {
  RatVec v;
  for (const Json& x : j) v.push_back(parse_rat(x.get<std::string>()));
  return v;
}

inline Json to_json(const LSpec& L) {
  if (L.is_integers()) return Json("Z");
  return to_json(std::vector<Int>(L.primes().begin(), L.primes().end()));
}

inline LSpec lspec_from_json(const Json& j) {
  if (j.is_string()) return LSpec::integers();
  std::vector<unsigned long> S;
  for (const Json& x : j) S.push_back(x.get<unsigned long>());
  return LSpec::primes(S);
}

inline Json to_json(const LinearSystem& sys) {
  Json M = Json::array();
  for (std::size_t i = 0; i < sys.m(); ++i) M.push_back(to_json(sys.M.row_vec(i)));
  return Json{{"M", M}, {"b", to_json(sys.b)}};
}

inline Json to_json(const ResiliencyProfile& r) {
  Json rows = Json::array();
  for (const RowShift& s : r.rows)
    rows.push_back(Json{{"shift", s.s ? Json(*s.s) : Json(nullptr)}, {"emptied", s.vacuous}});
  return Json{{"integral", r.integral},       {"resilient", r.resilient},
              {"half_resilient", r.half_resilient}, {"p", r.p},
              {"p_resilient", r.p_resilient}, {"rows", rows}};
}

inline ResiliencyProfile resiliency_from_json(const Json& j) {
  ResiliencyProfile r;
  r.integral = j.at("integral").get<bool>();
  r.resilient = j.at("resilient").get<bool>();
  r.half_resilient = j.at("half_resilient").get<bool>();
  r.p = j.at("p").get<unsigned long>();
  r.p_resilient = j.at("p_resilient").get<bool>();
  for (const Json& x : j.at("rows")) {
    RowShift s;
    if (!x.at("shift").is_null()) s.s = x.at("shift").get<unsigned long>();
    s.vacuous = x.at("emptied").get<bool>();
    r.rows.push_back(s);
  }
  return r;
}

inline Json to_json(const BadWeightSearch& b) {
  return Json{{"domain", b.domain},
              {"weight_box", b.weight_box},
              {"weights_checked", b.weights_checked},
              {"admissible", b.admissible},
              {"inconclusive", b.undecided},
              {"bad_weight", b.bad ? to_json(*b.bad) : Json(nullptr)},
              {"alternative", b.alternative ? to_json(*b.alternative) : Json(nullptr)}};
}

inline BadWeightSearch search_from_json(const Json& j) {
  BadWeightSearch b;
  b.domain = j.at("domain").get<std::string>();
  b.weight_box = j.at("weight_box").get<unsigned long>();
  b.weights_checked = j.at("weights_checked").get<std::size_t>();
  b.admissible = j.at("admissible").get<std::size_t>();
  b.undecided = j.at("inconclusive").get<std::size_t>();
  if (!j.at("bad_weight").is_null()) b.bad = int_vec_from_json(j.at("bad_weight"));
  if (!j.at("alternative").is_null()) b.alternative = rat_vec_from_json(j.at("alternative"));
  return b;
}

inline Property property_from_string(const std::string& s) {
  for (Property p : {Property::TDI, Property::NearTDI, Property::TDD, Property::TDinL})
    if (s == to_string(p)) return p;
  throw UsageError("unknown property " + s);
}

inline Status status_from_string(const std::string& s) {
  for (Status st : {Status::Certified, Status::Refuted, Status::Undecided})
    if (s == to_string(st)) return st;
  throw UsageError("unknown status " + s);
}

// Every certified or refuted verdict carries its evidence: the bad weight with
// its alternative, the failing row with the resiliency profile, or the GSC
// counterexample.
inline Json to_json(const Verdict& v) {
  Json j{{"property", to_string(v.property)},
         {"L", v.L ? to_json(*v.L) : Json(nullptr)},
         {"status", to_string(v.status)},
         {"rule", v.rule},
         {"reason", v.reason}};
  j["evidence"] = Json{
      {"bad_weight", v.bad_weight ? to_json(*v.bad_weight) : Json(nullptr)},
      {"bad_weight_domain", v.bad_weight_domain ? Json(*v.bad_weight_domain) : Json(nullptr)},
      {"alternative", v.alternative ? to_json(*v.alternative) : Json(nullptr)},
      {"gsc_counterexample", v.gsc_counterexample ? to_json(*v.gsc_counterexample) : Json(nullptr)},
      {"failing_row", v.failing_row ? Json(*v.failing_row + 1) : Json(nullptr)},
      {"resiliency", v.resiliency ? to_json(*v.resiliency) : Json(nullptr)}};
  Json s = Json::array();
  for (const BadWeightSearch& b : v.searches) s.push_back(to_json(b));
  j["searches"] = s;
  return j;
}

inline Verdict verdict_from_json(const Json& j) {
  Verdict v;
  v.property = property_from_string(j.at("property").get<std::string>());
  if (!j.at("L").is_null()) v.L = lspec_from_json(j.at("L"));
  v.status = status_from_string(j.at("status").get<std::string>());
  v.rule = j.at("rule").get<std::string>();
  v.reason = j.at("reason").get<std::string>();
  const Json& e = j.at("evidence");
  if (!e.at("bad_weight").is_null()) v.bad_weight = int_vec_from_json(e.at("bad_weight"));
  if (!e.at("bad_weight_domain").is_null()) v.bad_weight_domain = e.at("bad_weight_domain").get<std::string>();
  if (!e.at("alternative").is_null()) v.alternative = rat_vec_from_json(e.at("alternative"));
  if (!e.at("gsc_counterexample").is_null()) v.gsc_counterexample = int_vec_from_json(e.at("gsc_counterexample"));
  if (!e.at("failing_row").is_null()) v.failing_row = e.at("failing_row").get<std::size_t>() - 1;
  if (!e.at("resiliency").is_null()) v.resiliency = resiliency_from_json(e.at("resiliency"));
  for (const Json& s : j.at("searches")) v.searches.push_back(search_from_json(s));
  return v;
}

inline Json to_json(const SearchBudget& b) {
  return Json{{"weight_box", b.weight_box},
              {"primes", b.prime_sample},
              {"denominator_cap", b.denominator_cap}};
}

inline Json to_json(const Clutter& C) {
  Json a = Json::array();
  for (const Member& S : C.members()) {
    Json m = Json::array();
    for (std::size_t e : S) m.push_back(e + 1);
    a.push_back(m);
  }
  return Json{{"n", C.ground_size()}, {"members", a}};
}

// Exit status of a verdict; errors use codes above 2.
inline int exit_code(Status s) {
  switch (s) {
    case Status::Certified: return 0;
    case Status::Refuted: return 1;
    case Status::Undecided: return 2;
  }
  return 2;
}

}  // namespace dualint
