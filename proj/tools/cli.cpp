#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "sqv/grassmann_enum.hpp"
#include "sqv/verifier.hpp"

#ifndef SQV_VERSION
#define SQV_VERSION "0.0.0"
#endif

namespace sqv::cli {

using Json = nlohmann::ordered_json;

const char* tool_version() { return SQV_VERSION; }

// ---------------------------------------------------------------- parsing

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string strip_brackets(const std::string& s) {
  std::string t = trim(s);
  if (t.size() >= 2 && t.front() == '[' && t.back() == ']') return trim(t.substr(1, t.size() - 2));
  return t;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

long long parse_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': expected an integer, got '" + text + "'");
  }
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  const long long v = parse_integer(key, text);
  if (v < 0) throw ConfigError("'" + key + "' must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

std::vector<int> parse_int_vector(const std::string& key, const std::string& text) {
  std::vector<int> out;
  for (auto& tok : split_commas(strip_brackets(text))) out.push_back(static_cast<int>(parse_integer(key, tok)));
  return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("'" + key + "': expected true or false, got '" + text + "'");
}

// [[a,b],[c,d]] with integer or p/q entries.
QMat parse_matrix(const std::string& key, const std::string& text, std::size_t empty_cols) {
  std::string t = strip_brackets(text);
  std::vector<std::vector<mpq_class>> rows;
  std::size_t pos = 0;
  while (pos < t.size()) {
    const std::size_t open = t.find('[', pos);
    if (open == std::string::npos) {
      if (!trim(t.substr(pos)).empty() && trim(t.substr(pos)) != ",") throw ConfigError("'" + key + "': malformed matrix");
      break;
    }
    const std::size_t close = t.find(']', open);
    if (close == std::string::npos) throw ConfigError("'" + key + "': unbalanced brackets");
    std::vector<mpq_class> row;
    for (auto& tok : split_commas(t.substr(open + 1, close - open - 1))) {
      try {
        mpq_class v(tok);
        v.canonicalize();
        row.push_back(v);
      } catch (const std::exception&) {
        throw ConfigError("'" + key + "': bad matrix entry '" + tok + "'");
      }
    }
    if (!rows.empty() && row.size() != rows[0].size()) throw ConfigError("'" + key + "': ragged matrix");
    rows.push_back(std::move(row));
    pos = close + 1;
  }
  QMat m(rows.size(), rows.empty() ? empty_cols : rows[0].size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  os << "]";
  return os.str();
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  os << "]";
  return os.str();
}

const std::vector<std::string>& extra_checks() {
  static const std::vector<std::string> v{"all", "pointwise", "image_lemmas", "lemmas"};
  return v;
}

}  // namespace

std::vector<unsigned> parse_prime_list(const std::string& text) {
  std::vector<unsigned> out;
  for (auto& tok : split_commas(strip_brackets(text))) {
    const std::uint64_t v = parse_unsigned("primes", tok);
    out.push_back(static_cast<unsigned>(v));
  }
  return out;
}

std::vector<std::string> parse_name_list(const std::string& text) { return split_commas(strip_brackets(text)); }

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::map<std::string, bool> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (seen[key]) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    seen[key] = true;
    if (key == "d") {
      cfg.d = static_cast<int>(parse_integer(key, value));
    } else if (key == "w") {
      cfg.w = DimVector(parse_int_vector(key, value));
    } else if (key == "mode") {
      if (value == "sigma") cfg.sigma_mode = true;
      else if (value == "nakajima") cfg.sigma_mode = false;
      else throw ConfigError("'mode' must be sigma or nakajima");
    } else if (key == "primes" || key == "q") {
      cfg.primes = parse_prime_list(value);
    } else if (key == "v_min") {
      cfg.v_min = DimVector(parse_int_vector(key, value));
    } else if (key == "v_max") {
      cfg.v_max = DimVector(parse_int_vector(key, value));
    } else if (key == "relations") {
      cfg.relations = parse_name_list(value);
    } else if (key == "relation_sign" || key == "relation_signs") {
      cfg.relation_signs = parse_int_vector(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_unsigned(key, value);
    } else if (key == "jobs") {
      cfg.jobs = static_cast<unsigned>(parse_unsigned(key, value));
    } else if (key == "format") {
      cfg.format = value;
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "families") {
      cfg.families = value;
    } else if (key == "interpolation_budget") {
      cfg.interpolation_budget = parse_unsigned(key, value);
    } else if (key == "max_witnesses") {
      cfg.max_witnesses = parse_unsigned(key, value);
    } else if (key == "lemma_n_max") {
      cfg.lemma_n_max = parse_unsigned(key, value);
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

void validate(const RunConfig& cfg) {
  if (cfg.d < 1) throw ConfigError("'d' must be at least 1");
  const std::size_t n = static_cast<std::size_t>(2 * cfg.d - 1);
  if (cfg.w.size() != n) throw ConfigError("'w' must have " + std::to_string(n) + " entries");
  if (!cfg.w.nonnegative()) throw ConfigError("'w' must be nonnegative");
  if (cfg.sigma_mode)
    for (int x : cfg.w)
      if (x % 2) throw ConfigError("sigma mode needs every w_i even (each frame space carries a symplectic form)");
  if (cfg.primes.empty()) throw ConfigError("prime list is empty");
  for (unsigned p : cfg.primes)
    if (!is_prime(p)) throw ConfigError(std::to_string(p) + " is not prime");
  for (auto* v : {&cfg.v_min, &cfg.v_max})
    if (*v && (*v)->size() != n) throw ConfigError("v range bounds must have " + std::to_string(n) + " entries");
  if (!cfg.relation_signs.empty()) {
    if (cfg.relation_signs.size() != n) throw ConfigError("'relation_sign' must have " + std::to_string(n) + " entries");
    for (int s : cfg.relation_signs)
      if (s != 1 && s != -1) throw ConfigError("'relation_sign' entries must be 1 or -1");
  }
  for (auto& name : cfg.relations) {
    if (std::find(extra_checks().begin(), extra_checks().end(), name) != extra_checks().end()) continue;
    auto rel = parse_relation_name(name);
    if (!rel) throw ConfigError("unknown relation '" + name + "'");
    if (relation_needs_sigma(*rel) != cfg.sigma_mode)
      throw ConfigError("relation '" + name + "' is not available in " + (cfg.sigma_mode ? "sigma" : "nakajima") + " mode");
  }
  if (cfg.format != "json" && cfg.format != "csv") throw ConfigError("'format' must be json or csv");
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os << "d = " << d << "\n";
  os << "w = " << join_ints(w.values()) << "\n";
  os << "mode = " << (sigma_mode ? "sigma" : "nakajima") << "\n";
  os << "primes = " << join(primes) << "\n";
  if (v_min) os << "v_min = " << join_ints(v_min->values()) << "\n";
  if (v_max) os << "v_max = " << join_ints(v_max->values()) << "\n";
  os << "relations = " << join(relations) << "\n";
  if (!relation_signs.empty()) os << "relation_sign = " << join_ints(relation_signs) << "\n";
  os << "seed = " << seed << "\n";
  os << "interpolation_budget = " << interpolation_budget << "\n";
  os << "max_witnesses = " << max_witnesses << "\n";
  os << "lemma_n_max = " << lemma_n_max << "\n";
  return os.str();
}

std::string RunConfig::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// ---------------------------------------------------------------- families

namespace {

QMat standard_symplectic(std::size_t n) {
  QMat j(2 * n, 2 * n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    j(k, n + k) = 1;
    j(n + k, k) = -1;
  }
  return j;
}

void apply_kind(FiberFamily& f, const std::string& kind, std::size_t n, std::size_t k) {
  if (kind == "projective") {
    f.ambient = n + 1;
    f.dim = 1;
  } else if (kind == "grassmannian") {
    if (k > n) throw ConfigError("grassmannian needs k <= n");
    f.ambient = n;
    f.dim = k;
  } else if (kind == "lagrangian") {
    f.ambient = 2 * n;
    f.dim = n;
    f.form = standard_symplectic(n);
    f.lagrangian = true;
  } else if (kind == "codim_one_meet") {
    if (n == 0) throw ConfigError("codim_one_meet needs n >= 1");
    f.ambient = 2 * n;
    f.dim = n;
    f.form = standard_symplectic(n);
    f.lagrangian = true;
    QMat l0(n, 2 * n, 0);
    for (std::size_t a = 0; a < n; ++a) l0(a, a) = 1;
    f.meets.push_back({l0, n - 1});
  } else {
    throw ConfigError("unknown family kind '" + kind + "'");
  }
}

}  // namespace

std::vector<NamedFamily> parse_families(std::istream& in) {
  std::vector<NamedFamily> out;
  struct Pending {
    std::string kind;
    std::size_t n = 0, k = 0;
    std::optional<QMat> image_map;
    std::optional<QMat> meet;
  };
  Pending pend;
  auto finish = [&] {
    if (out.empty()) return;
    if (!pend.kind.empty()) {
      FiberFamily keep = out.back().family;
      apply_kind(out.back().family, pend.kind, pend.n, pend.k);
      // Explicit keys refine the kind.
      auto& f = out.back().family;
      if (keep.lower) f.lower = keep.lower;
      if (keep.upper) f.upper = keep.upper;
      f.contained.insert(f.contained.end(), keep.contained.begin(), keep.contained.end());
      f.images.insert(f.images.end(), keep.images.begin(), keep.images.end());
      f.meets.insert(f.meets.end(), keep.meets.begin(), keep.meets.end());
      f.excluded.insert(f.excluded.end(), keep.excluded.begin(), keep.excluded.end());
    }
    if (pend.image_map) throw ConfigError("family '" + out.back().name + "': image_map without image_target");
    if (pend.meet) throw ConfigError("family '" + out.back().name + "': meet without meet_dim");
    pend = Pending{};
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      std::string head = trim(line.substr(1, line.size() - 2));
      if (head.rfind("family", 0) != 0) throw ConfigError("line " + std::to_string(lineno) + ": expected [family NAME]");
      finish();
      NamedFamily nf;
      nf.name = trim(head.substr(6));
      if (nf.name.empty()) nf.name = "family" + std::to_string(out.size() + 1);
      nf.family.name = nf.name;
      out.push_back(std::move(nf));
      continue;
    }
    if (out.empty()) throw ConfigError("line " + std::to_string(lineno) + ": key outside a [family] section");
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    NamedFamily& nf = out.back();
    FiberFamily& f = nf.family;
    const std::size_t amb = f.ambient;
    if (key == "kind") pend.kind = value;
    else if (key == "n") pend.n = parse_unsigned(key, value);
    else if (key == "k") pend.k = parse_unsigned(key, value);
    else if (key == "ambient") f.ambient = parse_unsigned(key, value);
    else if (key == "dim") f.dim = parse_unsigned(key, value);
    else if (key == "lower") f.lower = parse_matrix(key, value, amb);
    else if (key == "upper") f.upper = parse_matrix(key, value, amb);
    else if (key == "contained") f.contained.push_back(parse_matrix(key, value, amb));
    else if (key == "excluded") f.excluded.push_back(parse_matrix(key, value, amb));
    else if (key == "form") f.form = parse_matrix(key, value, amb);
    else if (key == "lagrangian") f.lagrangian = parse_bool(key, value);
    else if (key == "image_map") pend.image_map = parse_matrix(key, value, amb);
    else if (key == "image_target") {
      if (!pend.image_map) throw ConfigError("line " + std::to_string(lineno) + ": image_target without image_map");
      f.images.push_back({*pend.image_map, parse_matrix(key, value, pend.image_map->rows())});
      pend.image_map.reset();
    } else if (key == "meet") pend.meet = parse_matrix(key, value, amb);
    else if (key == "meet_dim") {
      if (!pend.meet) throw ConfigError("line " + std::to_string(lineno) + ": meet_dim without meet");
      f.meets.push_back({*pend.meet, parse_unsigned(key, value)});
      pend.meet.reset();
    } else if (key == "degree_bound") nf.degree_bound = parse_unsigned(key, value);
    else throw ConfigError("line " + std::to_string(lineno) + ": unknown family key '" + key + "'");
  }
  finish();
  if (out.empty()) throw ConfigError("no [family] sections found");
  return out;
}

// ---------------------------------------------------------------- reports

namespace {

Json dims_json(const DimVector& v) { return Json(v.values()); }

Json matrix_json(const QMat& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json header(const std::string& command, const RunConfig& cfg) {
  Json j;
  j["tool"] = "sqv";
  j["version"] = tool_version();
  j["command"] = command;
  j["config_hash"] = cfg.hash();
  j["seed"] = cfg.seed;
  j["d"] = cfg.d;
  j["w"] = dims_json(cfg.w);
  j["mode"] = cfg.sigma_mode ? "sigma" : "nakajima";
  if (!cfg.relation_signs.empty()) j["relation_sign"] = cfg.relation_signs;
  return j;
}

Json poly_json(const ChiPoly& p) {
  Json j;
  j["coefficients"] = p.coeffs;
  j["polynomial"] = p.str();
  Json samples = Json::array();
  for (auto& s : p.samples) samples.push_back({{"q", s.order}, {"count", s.count}});
  j["samples"] = samples;
  j["held_out"] = p.held_out;
  return j;
}

Json report_json(const VerificationReport& r) {
  Json j;
  j["title"] = r.title;
  j["prime"] = r.prime;
  j["pass"] = r.pass;
  j["checked"] = r.checked;
  j["failures"] = r.failures;
  j["min_held_out"] = r.min_held_out;
  Json tallies = Json::object();
  for (auto& [k, v] : r.tallies) tallies[k] = v;
  j["tallies"] = tallies;
  Json chis = Json::array();
  for (auto& c : r.chi_details)
    chis.push_back({{"label", c.label}, {"polynomial", c.poly}, {"chi", c.chi}, {"occurrences", c.occurrences}});
  j["chi"] = chis;
  j["witnesses"] = r.witnesses;
  return j;
}

unsigned effective_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

struct Outputs {
  Json report;
  int code = kExitPass;
};

void emit_json(const Json& j, std::ostream& out) { out << j.dump(2) << "\n"; }

bool in_range(const RunConfig& cfg, const DimVector& v) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (cfg.v_min && v[k] < (*cfg.v_min)[k]) return false;
    if (cfg.v_max && v[k] > (*cfg.v_max)[k]) return false;
  }
  return true;
}

std::vector<unsigned> good_primes(const Workbench& wb, const RunConfig& cfg, Json& bad) {
  std::vector<unsigned> good;
  bad = Json::array();
  for (unsigned p : cfg.primes) {
    if (is_good_prime(wb.kan(), p)) good.push_back(p);
    else bad.push_back(p);
  }
  return good;
}

std::vector<std::string> expand_checks(const RunConfig& cfg) {
  std::vector<std::string> out;
  auto add = [&](const std::string& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  for (auto& name : cfg.relations) {
    if (name == "all") {
      add("pointwise");
      if (cfg.sigma_mode) add("image_lemmas");
      for (RelationName r : all_relation_names())
        if (relation_needs_sigma(r) == cfg.sigma_mode) add(to_string(r));
    } else {
      add(name);
    }
  }
  return out;
}

// Structural failures of the path category or form end the run with exit 1.
template <class F>
int guarded(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err, F&& body) {
  try {
    validate(cfg);
    return body();
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PairingError& e) {
    Json j = header(command, cfg);
    j["structure_error"] = std::string("pairing: ") + e.what();
    j["summary"] = {{"pass", false}};
    emit_json(j, out);
    err << "structure check failed: " << e.what() << "\n";
    return kExitFail;
  } catch (const FormError& e) {
    Json j = header(command, cfg);
    j["structure_error"] = std::string("form: ") + e.what();
    j["summary"] = {{"pass", false}};
    emit_json(j, out);
    err << "structure check failed: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace

int cmd_enumerate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded("enumerate", cfg, out, err, [&] {
    Workbench wb(cfg.d, cfg.w, cfg.sigma_mode, cfg.relation_signs);
    Json bad;
    const auto primes = good_primes(wb, cfg, bad);
    struct Row {
      unsigned q;
      DimVector v;
      std::uint64_t count;
    };
    std::vector<Row> rows;
    for (unsigned p : primes) {
      const FqRep& rep = wb.rep(p);
      std::vector<DimVector> dims;
      for (auto& v : candidate_dims(rep, cfg.sigma_mode))
        if (in_range(cfg, v)) dims.push_back(v);
      std::vector<std::uint64_t> counts(dims.size());
      std::atomic<std::size_t> next{0};
      auto work = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < dims.size();) counts[k] = count_points(rep, dims[k], cfg.sigma_mode);
      };
      std::vector<std::thread> pool;
      const unsigned threads = std::min<unsigned>(effective_jobs(cfg.jobs), static_cast<unsigned>(std::max<std::size_t>(dims.size(), 1)));
      for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
      work();
      for (auto& th : pool) th.join();
      for (std::size_t k = 0; k < dims.size(); ++k) rows.push_back({p, dims[k], counts[k]});
    }
    if (cfg.format == "csv") {
      out << "q";
      for (std::size_t k = 0; k < cfg.w.size(); ++k) out << ",v" << k + 1;
      out << ",count\n";
      for (auto& r : rows) {
        out << r.q;
        for (int x : r.v) out << "," << x;
        out << "," << r.count << "\n";
      }
      return kExitPass;
    }
    Json j = header("enumerate", cfg);
    j["primes"] = primes;
    j["bad_primes"] = bad;
    j["kan_dims"] = dims_json(wb.kan().dims);
    Json tables = Json::array();
    for (unsigned p : primes) {
      Json t;
      t["q"] = p;
      Json strata = Json::array();
      std::uint64_t total = 0;
      for (auto& r : rows)
        if (r.q == p) {
          strata.push_back({{"v", dims_json(r.v)}, {"count", r.count}});
          total += r.count;
        }
      t["total"] = total;
      t["strata"] = strata;
      tables.push_back(t);
    }
    j["tables"] = tables;
    emit_json(j, out);
    return kExitPass;
  });
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded("verify", cfg, out, err, [&]() -> int {
    if (cfg.format != "json") throw ConfigError("verify reports are JSON only");
    Workbench wb(cfg.d, cfg.w, cfg.sigma_mode, cfg.relation_signs);
    Json bad;
    const auto primes = good_primes(wb, cfg, bad);
    VerifyOptions opt;
    opt.jobs = effective_jobs(cfg.jobs);
    opt.max_witnesses = cfg.max_witnesses;
    opt.interpolation_budget = cfg.interpolation_budget;
    const auto checks = expand_checks(cfg);
    std::vector<RelationName> names;
    for (auto& c : checks)
      if (auto r = parse_relation_name(c)) names.push_back(*r);

    Json reports = Json::array();
    std::size_t failed = 0;
    auto add = [&](const VerificationReport& r) {
      if (!r.pass) ++failed;
      reports.push_back(report_json(r));
    };
    auto wants = [&](const std::string& c) { return std::find(checks.begin(), checks.end(), c) != checks.end(); };
    for (unsigned p : primes) {
      if (wants("pointwise")) add(verify_pointwise(wb, p, opt));
      if (wants("image_lemmas") && cfg.sigma_mode && cfg.d >= 2) add(verify_image_lemmas(wb, p, opt));
      for (auto& inst : admissible_instances(wb.dynkin(), cfg.sigma_mode, names)) add(verify(wb, inst, p, opt));
    }
    if (wants("lemmas")) {
      LemmaOptions lo;
      lo.n_max = cfg.lemma_n_max;
      lo.exhaustive_primes = primes;
      for (auto& r : lemma_suite(lo)) add(r);
    }
    Json j = header("verify", cfg);
    j["primes"] = primes;
    j["bad_primes"] = bad;
    j["checks"] = checks;
    j["reports"] = reports;
    j["summary"] = {{"pass", failed == 0}, {"reports", reports.size()}, {"failed_reports", failed}};
    emit_json(j, out);
    if (failed) err << failed << " of " << reports.size() << " reports failed\n";
    return failed ? kExitFail : kExitPass;
  });
}

int cmd_chi(const RunConfig& cfg, const std::vector<NamedFamily>& families, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.primes.empty()) throw ConfigError("prime list is empty");
    for (unsigned p : cfg.primes)
      if (!is_prime(p)) throw ConfigError(std::to_string(p) + " is not prime");
    if (cfg.format != "json") throw ConfigError("chi reports are JSON only");
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }
  Json j;
  j["tool"] = "sqv";
  j["version"] = tool_version();
  j["command"] = "chi";
  j["config_hash"] = cfg.hash();
  j["primes"] = cfg.primes;
  Json list = Json::array();
  bool ok = true;
  for (auto& nf : families) {
    Json f;
    f["name"] = nf.name;
    try {
      FamilyChi c = chi_family(nf.family, cfg.primes, nf.degree_bound);
      f["skipped_primes"] = c.skipped_primes;
      f["fit"] = poly_json(c.poly);
      f["chi"] = c.chi;
    } catch (const PolynomialityError& e) {
      ok = false;
      f["error"] = std::string("polynomiality: ") + e.what();
    } catch (const std::exception& e) {
      ok = false;
      f["error"] = e.what();
    }
    list.push_back(f);
  }
  j["families"] = list;
  j["summary"] = {{"pass", ok}};
  emit_json(j, out);
  return ok ? kExitPass : kExitFail;
}

int cmd_dump_kan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded("dump-kan", cfg, out, err, [&] {
    if (cfg.format != "json") throw ConfigError("dump-kan is JSON only");
    Workbench wb(cfg.d, cfg.w, cfg.sigma_mode, cfg.relation_signs);
    const KanRep& k = wb.kan();
    const HomSpaceTable& t = wb.table();
    Json j = header("dump-kan", cfg);
    j["dims"] = dims_json(k.dims);
    Json vertices = Json::array();
    const int n = k.dyn.rank();
    for (Vertex i = 0; i < n; ++i) {
      Json v;
      v["vertex"] = i + 1;
      Json coords = Json::array();
      for (auto& c : k.coords[static_cast<std::size_t>(i)]) {
        std::vector<int> walk;
        for (Vertex x : t.basis(i, c.j)[c.path]) walk.push_back(x + 1);
        coords.push_back({{"frame", c.j + 1}, {"path", walk}, {"slot", c.slot}});
      }
      v["coordinates"] = coords;
      v["eval"] = matrix_json(k.eval[static_cast<std::size_t>(i)]);
      if (k.sigma_mode) v["gram"] = matrix_json(k.gram[static_cast<std::size_t>(i)]);
      vertices.push_back(v);
    }
    j["vertices"] = vertices;
    Json arrows = Json::array();
    for (Vertex i = 0; i + 1 < n; ++i) {
      arrows.push_back({{"source", i + 1}, {"target", i + 2}, {"matrix", matrix_json(k.arrow(i, i + 1))}});
      arrows.push_back({{"source", i + 2}, {"target", i + 1}, {"matrix", matrix_json(k.arrow(i + 1, i))}});
    }
    j["arrows"] = arrows;
    emit_json(j, out);
    return kExitPass;
  });
}

int cmd_dump_paths(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded("dump-paths", cfg, out, err, [&] {
    if (cfg.format != "json") throw ConfigError("dump-paths is JSON only");
    Workbench wb(cfg.d, cfg.w, cfg.sigma_mode, cfg.relation_signs);
    const HomSpaceTable& t = wb.table();
    const int n = wb.dynkin().rank();
    Json j = header("dump-paths", cfg);
    Json spaces = Json::array();
    for (Vertex i = 0; i < n; ++i)
      for (Vertex k = 0; k < n; ++k) {
        Json walks = Json::array();
        for (auto& w : t.basis(i, k)) {
          std::vector<int> one;
          for (Vertex x : w) one.push_back(x + 1);
          walks.push_back(one);
        }
        Json s{{"source", i + 1}, {"target", k + 1}, {"dim", t.dim(i, k)}, {"basis", walks}};
        if (wb.pairing()) s["pairing"] = matrix_json(wb.pairing()->matrix(i, k));
        spaces.push_back(s);
      }
    j["spaces"] = spaces;
    emit_json(j, out);
    return kExitPass;
  });
}

}  // namespace sqv::cli
