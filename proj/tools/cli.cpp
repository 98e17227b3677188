#include "cli.hpp"

#include "halperin/halperin.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace halperin::cli {

namespace {

using json = nlohmann::ordered_json;

/// Flag or input problem detected before or during computation; exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { kJson, kCsv, kTable };

struct RunConfig {
  std::string command;
  std::optional<std::string> nu, charge, kmat;
  std::optional<std::string> max, m_max, n_max, fix_l, l0;
  std::string min_det = "0";
  std::string family = "auto";
  bool bosonic = false;
  std::optional<std::string> alpha, beta, t_index, m, n, k, d1, d2, amplify;
  std::optional<std::string> a, p, q, index;
  std::optional<std::string> eq, mod;
  std::optional<std::string> l_set, candidates, in_path;
  unsigned workers = 1;
  std::optional<std::string> format;
  std::optional<std::string> out_path;
};

// ---------------------------------------------------------------------------
// Parsing

Int parse_int(const std::string& text, const std::string& what) {
  static const std::regex kInt(R"([+-]?\d+)");
  if (!std::regex_match(text, kInt)) throw UsageError(what + ": not an integer: '" + text + "'");
  return Int(text);
}

Int parse_int_at_least(const std::string& text, const std::string& what, int lo) {
  Int v = parse_int(text, what);
  if (v < lo) throw UsageError(what + " must be >= " + std::to_string(lo));
  return v;
}

std::vector<Int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<Int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item, what));
  return out;
}

Filling parse_filling(const std::string& text, std::ostream& err) {
  static const std::regex kFrac(R"(\s*(\d+)\s*(?:/\s*(\d+))?\s*)");
  std::smatch mt;
  if (!std::regex_match(text, mt, kFrac)) throw UsageError("--nu: expected p/q or an integer, got '" + text + "'");
  const Int p(mt[1].str());
  const Int q = mt[2].matched ? Int(mt[2].str()) : Int(1);
  if (p < 1 || q < 1) throw UsageError("--nu: filling must be positive");
  Filling nu(p, q);
  if (nu.p() != p) err << "warning: filling " << p << "/" << q << " reduced to " << nu.str() << "\n";
  return nu;
}

ChargeVector parse_charge(const std::string& text) {
  const auto v = parse_int_list(text, "--t");
  if (v.size() != 2) throw UsageError("--t: expected t1,t2");
  try {
    return ChargeVector(v[0], v[1]);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--t: ") + e.what());
  }
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required flag ") + flag);
  return *v;
}

Format parse_format(const std::optional<std::string>& f, Format fallback) {
  if (!f) return fallback;
  if (*f == "json") return Format::kJson;
  if (*f == "csv") return Format::kCsv;
  if (*f == "table") return Format::kTable;
  throw UsageError("--format must be json, csv or table");
}

// ---------------------------------------------------------------------------
// Rendering

json int_json(const Int& v) {
  static const Int kExact = Int(1) << 53;
  if (abs(v) <= kExact) return json(static_cast<long long>(v));
  return json(v.str());
}

json charge_json(const ChargeVector& t) { return json::array({int_json(t.t1()), int_json(t.t2())}); }

json solution_json(const Solution& s) {
  json j;
  j["m"] = int_json(s.kmatrix.m);
  j["n"] = int_json(s.kmatrix.n);
  j["l"] = int_json(s.kmatrix.l);
  j["det"] = int_json(s.det);
  return j;
}

json solutions_json(const std::vector<Solution>& sols) {
  json arr = json::array();
  for (const auto& s : sols) arr.push_back(solution_json(s));
  return arr;
}

json trace_json(const ConstructionTrace& tr) {
  json j;
  j["family"] = to_string(tr.family);
  for (const auto& [name, value] : tr.fields()) j[name] = int_json(value);
  if (tr.charge_swapped) j["charge_swapped"] = true;
  return j;
}

std::string csv_rows(const std::vector<Solution>& sols) {
  std::string s = "m,n,l,det\n";
  for (const auto& x : sols)
    s += x.kmatrix.m.str() + "," + x.kmatrix.n.str() + "," + x.kmatrix.l.str() + "," + x.det.str() + "\n";
  return s;
}

std::string table_rows(const Filling& nu, const ChargeVector& t, const std::vector<Solution>& sols) {
  std::string s = "nu = " + nu.str() + ", t = " + t.str() + "\n";
  s += "(m, n, l, mn-l^2)\n";
  for (const auto& x : sols) s += x.str() + "\n";
  return s;
}

/// Flat key/value report rendered in any of the three formats.
std::string render_report(const json& j, Format f) {
  if (f == Format::kJson) return j.dump() + "\n";
  std::string s = f == Format::kCsv ? "key,value\n" : "";
  for (const auto& [key, value] : j.items()) {
    const std::string v = value.is_string() ? value.get<std::string>() : value.dump();
    s += f == Format::kCsv ? key + "," + (v.find(',') != std::string::npos ? "\"" + v + "\"" : v) + "\n"
                           : key + ": " + v + "\n";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Subcommands. Each returns (exit code, rendered output).

struct Result {
  int code = kExitFound;
  std::string text;
};

std::pair<Int, Int> box_bounds(const RunConfig& c) {
  Int m_max = 0, n_max = 0;
  if (c.max) m_max = n_max = parse_int_at_least(*c.max, "--max", 1);
  if (c.m_max) m_max = parse_int_at_least(*c.m_max, "--m-max", 1);
  if (c.n_max) n_max = parse_int_at_least(*c.n_max, "--n-max", 1);
  if (m_max < 1 || n_max < 1) throw UsageError("bounds required: --max or both --m-max and --n-max");
  return {m_max, n_max};
}

Result cmd_enumerate(const RunConfig& c, std::ostream& err) {
  const Filling nu = parse_filling(need(c.nu, "--nu"), err);
  const ChargeVector t = parse_charge(need(c.charge, "--t"));
  const auto [m_max, n_max] = box_bounds(c);
  if (c.workers < 1) throw UsageError("--workers must be >= 1");

  std::vector<Solution> sols;
  if (c.fix_l)
    sols = enumerate_at_l(nu, t, parse_int_at_least(*c.fix_l, "--fix-l", 0), m_max, n_max);
  else
    sols = enumerate(nu, t, m_max, n_max, c.workers);

  Result r;
  r.code = sols.empty() ? kExitEmpty : kExitFound;
  switch (parse_format(c.format, Format::kCsv)) {
    case Format::kCsv: r.text = csv_rows(sols); break;
    case Format::kTable: r.text = table_rows(nu, t, sols); break;
    case Format::kJson: {
      json j;
      j["nu"] = nu.str();
      j["t"] = charge_json(t);
      j["solutions"] = solutions_json(sols);
      j["outcome"] = sols.empty() ? "empty" : "found";
      r.text = j.dump() + "\n";
    }
  }
  return r;
}

/// Smallest growth parameter (starting from 1) whose construction clears min_det.
template <class Make>
Solution grow_until(const Int& min_det, Make make) {
  for (Int x = 1;; ++x) {
    Solution s = make(x);
    if (s.det > min_det) return s;
  }
}

Solution construct_for(const RunConfig& c, const Filling& nu, const ChargeVector& t, const Int& min_det) {
  const std::string& fam = c.family;
  auto opt_int = [](const std::optional<std::string>& v, const char* flag) -> std::optional<Int> {
    if (!v) return std::nullopt;
    return parse_int_at_least(*v, flag, 1);
  };

  if (c.bosonic) {
    if (fam != "auto") throw UsageError("--bosonic cannot be combined with --family");
    const Int alpha = c.alpha ? parse_int_at_least(*c.alpha, "--alpha", 2) : Int(2);
    if (is_odd(alpha)) throw UsageError("--alpha must be even");
    if (auto beta = opt_int(c.beta, "--beta")) return bosonic_family(nu, t, alpha, *beta);
    return bosonic_construct(nu, t, min_det, alpha);
  }
  if (fam == "auto") return construct(nu, t, min_det);
  if (fam == "t10") {
    if (!(t == ChargeVector(1, 0))) throw UsageError("--family t10 requires --t 1,0");
    Solution s = [&] {
      if (auto m = opt_int(c.m, "--m")) return construct_t10(nu, *m);
      const Int m0 = nu.q() / nu.p() + 1;  // least m with p m - q >= 1
      return grow_until(min_det, [&](const Int& x) { return construct_t10(nu, m0 + x - 1); });
    }();
    if (auto a = opt_int(c.amplify, "--amplify")) s = amplify_t10(s, *a);
    return s;
  }
  if (fam == "t11" || fam == "t11-nonresidue") {
    if (!(t == ChargeVector(1, 1))) throw UsageError("--family " + fam + " requires --t 1,1");
    auto make = [&](const Int& ti) {
      return fam == "t11" ? construct_t11(nu, ti) : construct_t11_nonresidue(nu, ti);
    };
    if (auto ti = opt_int(c.t_index, "--t-index")) return make(*ti);
    return grow_until(min_det, make);
  }
  if (fam == "integer") {
    if (!nu.is_integer() || nu.p() < 2) throw UsageError("--family integer requires an integer filling >= 2");
    if (auto beta = opt_int(c.beta, "--beta")) return construct_integer_general(nu.p(), t, *beta);
    return grow_until(min_det, [&](const Int& b) { return construct_integer_general(nu.p(), t, b); });
  }
  if (fam == "unity") {
    if (!(nu == Filling(1))) throw UsageError("--family unity requires --nu 1");
    if (auto beta = opt_int(c.beta, "--beta")) return construct_unity_general(t, *beta);
    return grow_until(min_det, [&](const Int& b) { return construct_unity_general(t, b); });
  }
  if (fam == "nu1") {
    if (!(nu == Filling(1)) || !(t == ChargeVector(1, 1)))
      throw UsageError("--family nu1 requires --nu 1 --t 1,1");
    return construct_nu1_t11(parse_int_at_least(need(c.d1, "--d1"), "--d1", 1),
                             parse_int_at_least(need(c.d2, "--d2"), "--d2", 1));
  }
  throw UsageError("unknown --family '" + fam + "'");
}

Result cmd_construct(const RunConfig& c, std::ostream& err) {
  const Filling nu = parse_filling(need(c.nu, "--nu"), err);
  const ChargeVector t = parse_charge(need(c.charge, "--t"));
  const Int min_det = parse_int_at_least(c.min_det, "--min-det", 0);

  Solution s = [&] {
    try {
      return construct_for(c, nu, t, min_det);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  if (s.det <= min_det)
    throw UsageError("explicit parameters give det " + s.det.str() + " <= --min-det " + min_det.str());

  Result r;
  switch (parse_format(c.format, Format::kJson)) {
    case Format::kCsv: r.text = csv_rows({s}); break;
    case Format::kTable: {
      r.text = table_rows(nu, t, {s});
      if (s.trace) {
        r.text += "family: " + std::string(to_string(s.trace->family)) + "\n";
        for (const auto& [name, value] : s.trace->fields()) r.text += name + " = " + value.str() + "\n";
      }
      break;
    }
    case Format::kJson: {
      json j;
      j["nu"] = nu.str();
      j["t"] = charge_json(t);
      j["solutions"] = solutions_json({s});
      j["outcome"] = "constructed";
      j["parity"] = to_string(parity_class(s.kmatrix));
      if (s.trace) j["trace"] = trace_json(*s.trace);
      r.text = j.dump() + "\n";
    }
  }
  return r;
}

Result cmd_fixed_l(const RunConfig& c, std::ostream& err) {
  const Filling nu = parse_filling(need(c.nu, "--nu"), err);
  const ChargeVector t = parse_charge(need(c.charge, "--t"));
  const Int l0 = parse_int_at_least(need(c.l0, "--l"), "--l", 0);
  const FixedLOutcome o = solve_fixed_l(nu, t, l0);

  Result r;
  r.code = o.kind == FixedLKind::kEmpty ? kExitEmpty : kExitFound;
  switch (parse_format(c.format, Format::kJson)) {
    case Format::kCsv:
      r.text = csv_rows(o.solutions);
      if (o.kind == FixedLKind::kInfiniteFamily) r.text += "# infinite_family: " + o.family_description() + "\n";
      break;
    case Format::kTable:
      r.text = table_rows(nu, t, o.solutions) + "outcome: " + to_string(o.kind) + "\n";
      if (o.kind == FixedLKind::kInfiniteFamily) r.text += "family: " + o.family_description() + "\n";
      break;
    case Format::kJson: {
      json j;
      j["nu"] = nu.str();
      j["t"] = charge_json(t);
      j["l0"] = int_json(l0);
      j["solutions"] = solutions_json(o.solutions);
      j["outcome"] = to_string(o.kind);
      if (o.kind == FixedLKind::kInfiniteFamily) j["family"] = o.family_description();
      r.text = j.dump() + "\n";
    }
  }
  return r;
}

Result cmd_bound(const RunConfig& c) {
  const ChargeVector t = parse_charge(need(c.charge, "--t"));
  const Int l0 = parse_int_at_least(need(c.l0, "--l"), "--l", 0);
  const BoundCertificate b = max_filling_fixed_l(t, l0);
  json j;
  j["t"] = charge_json(t);
  j["l0"] = int_json(l0);
  j["certified_upper_bound"] = b.certified_upper_bound.str();
  j["analytic_bound"] = b.analytic_bound.str();
  j["finite_region_max"] = b.finite_region_max ? json(b.finite_region_max->str()) : json(nullptr);
  j["empirical_max"] = b.empirical_max.str();
  j["scan_region"] = {{"m_max", int_json(b.scan_m_max)}, {"n_max", int_json(b.scan_n_max)}};
  j["outcome"] = "certified";
  return {kExitFound, render_report(j, parse_format(c.format, Format::kJson))};
}

Result cmd_gap(const RunConfig& c, std::ostream& err) {
  const ChargeVector t = parse_charge(need(c.charge, "--t"));
  std::vector<Int> ls;
  for (const Int& l : parse_int_list(need(c.l_set, "--l-set"), "--l-set")) {
    if (l < 0) throw UsageError("--l-set entries must be >= 0");
    ls.push_back(l);
  }
  std::vector<Filling> cands;
  std::stringstream ss(need(c.candidates, "--candidates"));
  std::string item;
  while (std::getline(ss, item, ',')) cands.push_back(parse_filling(item, err));

  const auto gaps = union_gap_check(t, ls, cands);
  json j;
  j["t"] = charge_json(t);
  json arr = json::array();
  for (const auto& g : gaps) arr.push_back({{"nu", g.nu.str()}, {"by_certificate", g.by_certificate}});
  j["unattainable"] = arr;
  j["outcome"] = gaps.empty() ? "none" : "found";
  return {gaps.empty() ? kExitEmpty : kExitFound, j.dump() + "\n"};
}

Result cmd_classify(const RunConfig& c, std::ostream& err) {
  json j;
  if (c.kmat) {
    const auto v = parse_int_list(*c.kmat, "--k");
    if (v.size() != 3) throw UsageError("--k: expected m,n,l");
    const KMatrix k{v[0], v[1], v[2]};
    j["m"] = int_json(k.m);
    j["n"] = int_json(k.n);
    j["l"] = int_json(k.l);
    j["det"] = int_json(determinant(k));
    j["valid"] = is_valid_state(k);
    j["parity"] = to_string(parity_class(k));
    if (c.charge) {
      const ChargeVector t = parse_charge(*c.charge);
      j["t"] = charge_json(t);
      if (is_valid_state(k)) j["nu"] = filling_fraction(k, t).str();
    }
  } else {
    const Filling nu = parse_filling(need(c.nu, "--nu or --k"), err);
    const ChargeVector t = parse_charge(need(c.charge, "--t"));
    j["nu"] = nu.str();
    j["t"] = charge_json(t);
    j["fermionic_obstruction"] = to_string(fermionic_obstruction(nu, t));
  }
  return {kExitFound, render_report(j, parse_format(c.format, Format::kJson))};
}

Result cmd_residue(const RunConfig& c) {
  const Int p = parse_int_at_least(need(c.p, "--p"), "--p", 1);
  json j;
  int code = kExitFound;
  if (c.q) {
    const Int q = parse_int_at_least(*c.q, "--q", 1);
    const Int idx = c.index ? parse_int_at_least(*c.index, "--index", 0) : Int(0);
    if (ntheory::gcd(p, q) != 1) throw UsageError("--p and --q must be coprime");
    j["p"] = int_json(p);
    j["q"] = int_json(q);
    j["index"] = int_json(idx);
    if (auto f = ntheory::qr_lemma_family(p, q, idx)) {
      j["a"] = int_json(f->a);
      j["b"] = int_json(f->b);
      j["l"] = int_json(f->l);
      j["branch"] = f->branch == ntheory::LemmaBranch::kNegQResidue ? "neg_q_residue" : "q_residue";
      j["outcome"] = "found";
    } else {
      j["outcome"] = "no_residue_witness";
      code = kExitEmpty;
    }
  } else {
    const Int a = parse_int(need(c.a, "--a"), "--a");
    j["a"] = int_json(a);
    j["modulus"] = int_json(p);
    const auto w = ntheory::quadratic_residue_witness(a, p);
    j["witness"] = w ? int_json(w->h) : json(nullptr);
    if (is_odd(p) && ntheory::is_prime(p))
      j["legendre"] = ntheory::legendre_symbol(a, p);
    else
      j["legendre"] = nullptr;
    j["outcome"] = w ? "residue" : "nonresidue";
    code = w ? kExitFound : kExitEmpty;
  }
  return {code, render_report(j, parse_format(c.format, Format::kJson))};
}

Result cmd_triples(const RunConfig& c) {
  const Int m = parse_int(need(c.m, "--m"), "--m");
  const Int n = parse_int(need(c.n, "--n"), "--n");
  const Int k = c.k ? parse_int(*c.k, "--k") : Int(1);
  ntheory::PythTriple tr;
  try {
    tr = ntheory::euclid_triple(m, n, k);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Format f = parse_format(c.format, Format::kJson);
  if (f == Format::kCsv) return {kExitFound, "a,b,c\n" + tr.a.str() + "," + tr.b.str() + "," + tr.c.str() + "\n"};
  json j;
  j["a"] = int_json(tr.a);
  j["b"] = int_json(tr.b);
  j["c"] = int_json(tr.c);
  j["primitive"] = tr.primitive;
  return {kExitFound, render_report(j, f)};
}

Result cmd_modcheck(const RunConfig& c) {
  ntheory::ObstructionEquation eq;
  try {
    eq = ntheory::parse_obstruction_equation(need(c.eq, "--eq"));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Int mod = parse_int_at_least(need(c.mod, "--mod"), "--mod", 2);
  const auto rep = ntheory::mod_solvable(eq, mod);
  json j;
  j["equation"] = eq.str();
  j["modulus"] = int_json(mod);
  j["solvable"] = rep.solvable;
  json w = json::array();
  for (const Int& v : rep.witness) w.push_back(int_json(v));
  j["witness"] = w;
  j["outcome"] = rep.solvable ? "solvable" : "unsolvable";
  return {rep.solvable ? kExitFound : kExitEmpty, render_report(j, parse_format(c.format, Format::kJson))};
}

Int json_to_int(const json& v) {
  if (v.is_number_integer()) return Int(v.get<long long>());
  if (v.is_string()) return parse_int(v.get<std::string>(), "solution entry");
  throw UsageError("solution entries must be integers");
}

Result cmd_verify(const RunConfig& c, std::ostream& err) {
  const std::string& path = need(c.in_path, "--in");
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::optional<Filling> nu;
  std::optional<ChargeVector> t;
  if (c.nu) nu = parse_filling(*c.nu, err);
  if (c.charge) t = parse_charge(*c.charge);

  std::vector<std::vector<Int>> rows;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw UsageError(path + ": invalid JSON");
    if (!nu && j.contains("nu")) nu = parse_filling(j["nu"].get<std::string>(), err);
    if (!t && j.contains("t")) t = ChargeVector(json_to_int(j["t"][0]), json_to_int(j["t"][1]));
    for (const auto& s : j.value("solutions", json::array()))
      rows.push_back({json_to_int(s.at("m")), json_to_int(s.at("n")), json_to_int(s.at("l")), json_to_int(s.at("det"))});
  } else {
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      if (line.empty() || line[0] == '#' || line.rfind("m,n,l,det", 0) == 0) continue;
      const auto v = parse_int_list(line, "CSV row");
      if (v.size() != 4) throw UsageError("CSV rows must be m,n,l,det");
      rows.push_back(v);
    }
  }
  if (!nu || !t) throw UsageError("verify needs --nu and --t for CSV input");

  std::size_t failed = 0;
  json bad = json::array();
  for (const auto& r : rows) {
    const Solution s{{r[0], r[1], r[2]}, r[3], *nu, *t, std::nullopt};
    if (!verify_solution(s)) {
      ++failed;
      bad.push_back(solution_json(s));
    }
  }
  json j;
  j["nu"] = nu->str();
  j["t"] = charge_json(*t);
  j["checked"] = rows.size();
  j["failed"] = failed;
  j["failures"] = bad;
  j["outcome"] = failed == 0 ? "verified" : "failed";
  return {failed == 0 ? kExitFound : kExitEmpty, j.dump() + "\n"};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Exact solver for bilayer K-matrix filling fractions", "halperin-cli"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto fmt = [&](CLI::App* s) {
    s->add_option("--format", c.format, "json | csv | table");
    s->add_option("--out", c.out_path, "write output to PATH");
  };

  auto* en = app.add_subcommand("enumerate", "all solutions in a box");
  en->add_option("--nu", c.nu, "filling p/q");
  en->add_option("--t", c.charge, "charge vector t1,t2");
  en->add_option("--max", c.max, "bound for both m and n");
  en->add_option("--m-max", c.m_max);
  en->add_option("--n-max", c.n_max);
  en->add_option("--fix-l", c.fix_l, "restrict to l = L");
  en->add_option("--workers", c.workers, "threads for the search");
  fmt(en);

  auto* co = app.add_subcommand("construct", "one verified solution with det > --min-det");
  co->add_option("--nu", c.nu);
  co->add_option("--t", c.charge);
  co->add_option("--min-det", c.min_det);
  co->add_option("--family", c.family, "auto | t10 | t11 | t11-nonresidue | integer | unity | nu1");
  co->add_flag("--bosonic", c.bosonic, "all-even K-matrix");
  co->add_option("--alpha", c.alpha, "even factor for --bosonic");
  co->add_option("--beta", c.beta);
  co->add_option("--t-index", c.t_index);
  co->add_option("--m", c.m, "diagonal entry m for --family t10");
  co->add_option("--amplify", c.amplify, "alpha for (m, a^2 n, a l) with --family t10");
  co->add_option("--d1", c.d1);
  co->add_option("--d2", c.d2);
  fmt(co);

  auto* fl = app.add_subcommand("fixed-l", "complete solution set at a fixed l");
  fl->add_option("--nu", c.nu);
  fl->add_option("--t", c.charge);
  fl->add_option("--l", c.l0);
  fmt(fl);

  auto* bo = app.add_subcommand("bound", "upper bound on fillings at a fixed l");
  bo->add_option("--t", c.charge);
  bo->add_option("--l", c.l0);
  fmt(bo);

  auto* ga = app.add_subcommand("gap", "fillings no l in a finite set can produce");
  ga->add_option("--t", c.charge);
  ga->add_option("--l-set", c.l_set, "comma-separated l values");
  ga->add_option("--candidates", c.candidates, "comma-separated fillings");
  fmt(ga);

  auto* cl = app.add_subcommand("classify", "parity class of a K-matrix, or fermionic obstruction");
  cl->add_option("--k", c.kmat, "m,n,l");
  cl->add_option("--t", c.charge);
  cl->add_option("--nu", c.nu);
  fmt(cl);

  auto* re = app.add_subcommand("residue", "quadratic residue witness and Legendre symbol");
  re->add_option("--a", c.a);
  re->add_option("--p", c.p, "modulus");
  re->add_option("--q", c.q, "lemma family mode: (a, b, l) with p | a^2-b^2, lp - q = ab");
  re->add_option("--index", c.index);
  fmt(re);

  auto* tr = app.add_subcommand("triples", "Pythagorean triple from Euclid's formula");
  tr->add_option("--m", c.m);
  tr->add_option("--n", c.n);
  tr->add_option("--k", c.k);
  fmt(tr);

  auto* mc = app.add_subcommand("modcheck", "modular solvability scan");
  mc->add_option("--eq", c.eq, "e.g. \"3x^2+2=y^2\"");
  mc->add_option("--mod", c.mod);
  fmt(mc);

  auto* ve = app.add_subcommand("verify", "re-verify emitted solution rows");
  ve->add_option("--in", c.in_path, "JSON or CSV output of another subcommand");
  ve->add_option("--nu", c.nu);
  ve->add_option("--t", c.charge);
  fmt(ve);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    Result r;
    if (en->parsed())
      r = cmd_enumerate(c, err);
    else if (co->parsed())
      r = cmd_construct(c, err);
    else if (fl->parsed())
      r = cmd_fixed_l(c, err);
    else if (bo->parsed())
      r = cmd_bound(c);
    else if (ga->parsed())
      r = cmd_gap(c, err);
    else if (cl->parsed())
      r = cmd_classify(c, err);
    else if (re->parsed())
      r = cmd_residue(c);
    else if (tr->parsed())
      r = cmd_triples(c);
    else if (mc->parsed())
      r = cmd_modcheck(c);
    else
      r = cmd_verify(c, err);

    if (c.out_path) {
      std::ofstream f(*c.out_path, std::ios::binary);
      if (!f) throw UsageError("cannot write " + *c.out_path);
      f << r.text;
    } else {
      out << r.text;
    }
    return r.code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace halperin::cli
