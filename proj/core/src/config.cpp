#include "cyclorec/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "cyclorec/errors.hpp"
#include "cyclorec/field.hpp"
#include "cyclorec/qpoly.hpp"

namespace cyclorec {
namespace {

using Json = nlohmann::ordered_json;

constexpr Precision kMinPrecision = 32;
constexpr Precision kMaxPrecision = 1 << 16;

void only_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    if (!known) throw ParseError(path + "." + k + ": unknown key");
  }
}

const Json& required(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) throw ParseError(path + "." + key + ": missing");
  return j.at(key);
}

mpq_class rational(const Json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return mpq_class(j.dump());
    if (j.is_number_float()) return parse_rational(j.dump());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const std::invalid_argument&) {
  }
  throw ParseError(path + ": expected a rational number or string");
}

mpz_class big_integer(const Json& j, const std::string& path) {
  const mpq_class q = rational(j, path);
  if (q.get_den() != 1) throw ParseError(path + ": expected an integer");
  return q.get_num();
}

long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
  return j.get<long>();
}

long at_least(const Json& j, const std::string& path, long lo) {
  const long v = integer(j, path);
  if (v < lo) throw ValidationError(path + " must be at least " + std::to_string(lo));
  return v;
}

bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw ParseError(path + ": expected true or false");
  return j.get<bool>();
}

PolyCoords poly(const Json& j, const std::string& path, unsigned degree) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of coefficients");
  PolyCoords out;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string cp = path + "[" + std::to_string(i) + "]";
    std::vector<mpq_class> coords(degree);
    if (j[i].is_array()) {
      if (j[i].size() > degree)
        throw ValidationError(cp + " has " + std::to_string(j[i].size()) + " coordinates, field degree is " +
                              std::to_string(degree));
      for (size_t c = 0; c < j[i].size(); ++c) coords[c] = rational(j[i][c], cp + "[" + std::to_string(c) + "]");
    } else {
      coords[0] = rational(j[i], cp);
    }
    out.push_back(std::move(coords));
  }
  return out;
}

std::vector<PolyCoords> poly_list(const Json& j, const std::string& path, unsigned degree) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of polynomials");
  std::vector<PolyCoords> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(poly(j[i], path + "[" + std::to_string(i) + "]", degree));
  return out;
}

bool is_prime(unsigned long p) { return p >= 2 && mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) != 0; }

void parse_job(const Json& job, JobConfig& cfg) {
  const std::string P = "job";
  only_keys(job, P,
            {"zeta", "n_range", "S", "r", "eps", "M_max", "D_max", "precision", "height_cap", "matveev_C",
             "budget_ms", "workers", "allow_zero", "allow_negative"});
  if (job.contains("zeta")) {
    const Json& z = job["zeta"];
    only_keys(z, P + ".zeta", {"m", "j"});
    const long m = at_least(required(z, P + ".zeta", "m"), P + ".zeta.m", 1);
    const long jj = integer(required(z, P + ".zeta", "j"), P + ".zeta.j");
    cfg.zeta = normalize_root(static_cast<unsigned>(m), jj);
  }
  if (job.contains("n_range")) {
    const Json& n = job["n_range"];
    if (!n.is_array() || n.size() != 2) throw ParseError(P + ".n_range: expected [lo, hi]");
    const long lo = at_least(n[0], P + ".n_range[0]", 0);
    const long hi = at_least(n[1], P + ".n_range[1]", 0);
    if (hi < lo) throw ValidationError(P + ".n_range: lo exceeds hi");
    cfg.n_range = NRange{static_cast<unsigned long>(lo), static_cast<unsigned long>(hi)};
  }
  if (job.contains("S")) {
    const Json& s = job["S"];
    if (!s.is_array()) throw ParseError(P + ".S: expected an array");
    std::set<std::pair<unsigned long, long>> seen;
    for (size_t i = 0; i < s.size(); ++i) {
      const std::string sp = P + ".S[" + std::to_string(i) + "]";
      PrimeSelector sel;
      if (s[i].is_object()) {
        only_keys(s[i], sp, {"p", "index"});
        sel.p = at_least(required(s[i], sp, "p"), sp + ".p", 2);
        if (s[i].contains("index")) sel.index = static_cast<unsigned>(at_least(s[i]["index"], sp + ".index", 0));
      } else {
        sel.p = at_least(s[i], sp, 2);
      }
      if (!is_prime(sel.p)) throw ValidationError(sp + ": " + std::to_string(sel.p) + " is not prime");
      if (!seen.insert({sel.p, sel.index ? long(*sel.index) : -1}).second)
        throw ValidationError(sp + ": duplicate entry");
      cfg.S.push_back(sel);
    }
  }
  if (job.contains("r")) cfg.r = static_cast<unsigned>(at_least(job["r"], P + ".r", 1));
  if (job.contains("eps")) {
    cfg.eps = rational(job["eps"], P + ".eps");
    if (sgn(*cfg.eps) <= 0) throw ValidationError(P + ".eps must be positive");
  }
  if (job.contains("M_max")) cfg.M_max = static_cast<unsigned>(at_least(job["M_max"], P + ".M_max", 1));
  if (job.contains("D_max")) cfg.D_max = static_cast<unsigned>(at_least(job["D_max"], P + ".D_max", 1));
  if (job.contains("precision")) {
    cfg.precision = at_least(job["precision"], P + ".precision", kMinPrecision);
    if (cfg.precision > kMaxPrecision)
      throw ValidationError(P + ".precision must be at most " + std::to_string(kMaxPrecision));
  }
  if (job.contains("height_cap")) {
    cfg.height_cap = big_integer(job["height_cap"], P + ".height_cap");
    if (*cfg.height_cap < 1) throw ValidationError(P + ".height_cap must be positive");
  }
  if (job.contains("matveev_C")) {
    cfg.matveev_C = rational(job["matveev_C"], P + ".matveev_C");
    if (sgn(*cfg.matveev_C) <= 0) throw ValidationError(P + ".matveev_C must be positive");
  }
  if (job.contains("budget_ms")) cfg.budget_ms = at_least(job["budget_ms"], P + ".budget_ms", 0);
  if (job.contains("workers")) cfg.workers = static_cast<unsigned>(at_least(job["workers"], P + ".workers", 1));
  if (job.contains("allow_zero")) cfg.allow_zero = boolean(job["allow_zero"], P + ".allow_zero");
  if (job.contains("allow_negative")) cfg.allow_negative = boolean(job["allow_negative"], P + ".allow_negative");
}

Json rational_json(const mpq_class& q) { return format_rational(q); }

Json poly_json(const PolyCoords& p) {
  Json a = Json::array();
  for (const auto& coords : p) {
    Json c = Json::array();
    for (const auto& q : coords) c.push_back(rational_json(q));
    a.push_back(std::move(c));
  }
  return a;
}

}  // namespace

bool JobConfig::operator==(const JobConfig& o) const {
  auto same_root = [](const std::optional<RootSpec>& a, const std::optional<RootSpec>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || (a->order == b->order && a->exponent == b->exponent);
  };
  return conductor == o.conductor && f == o.f && alpha == o.alpha && same_root(zeta, o.zeta) &&
         n_range == o.n_range && S == o.S && r == o.r && eps == o.eps && M_max == o.M_max && D_max == o.D_max &&
         precision == o.precision && height_cap == o.height_cap && matveev_C == o.matveev_C &&
         budget_ms == o.budget_ms && workers == o.workers && allow_zero == o.allow_zero &&
         allow_negative == o.allow_negative;
}

ParamLRS JobConfig::sequence() const {
  const FieldPtr K = make_field(conductor);
  auto build = [&](const std::vector<PolyCoords>& polys) {
    std::vector<KPoly> out;
    for (const auto& p : polys) {
      std::vector<CycloElem> coeffs;
      for (const auto& c : p) coeffs.emplace_back(K, c);
      out.emplace_back(K, std::move(coeffs));
    }
    return out;
  };
  return ParamLRS(build(f), build(alpha));
}

const RootSpec& JobConfig::root() const {
  if (!zeta) throw ValidationError("job.zeta is required for this command");
  return *zeta;
}

const NRange& JobConfig::range() const {
  if (!n_range) throw ValidationError("job.n_range is required for this command");
  return *n_range;
}

JobConfig parse_config_text(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const size_t upto = std::min<size_t>(e.byte, text.size());
    const long line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw ParseError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  only_keys(doc, "config", {"field", "sequence", "job"});
  JobConfig cfg;
  const Json& field = required(doc, "config", "field");
  only_keys(field, "field", {"conductor"});
  cfg.conductor = static_cast<unsigned>(at_least(required(field, "field", "conductor"), "field.conductor", 1));
  const unsigned degree = static_cast<unsigned>(euler_phi(cfg.conductor));

  const Json& seq = required(doc, "config", "sequence");
  only_keys(seq, "sequence", {"f", "alpha"});
  cfg.f = poly_list(required(seq, "sequence", "f"), "sequence.f", degree);
  cfg.alpha = poly_list(required(seq, "sequence", "alpha"), "sequence.alpha", degree);

  if (doc.contains("job")) parse_job(doc["job"], cfg);
  cfg.sequence();  // validates the recurrence
  return cfg;
}

JobConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize(const JobConfig& cfg) {
  Json doc;
  doc["field"]["conductor"] = cfg.conductor;
  Json f = Json::array(), a = Json::array();
  for (const auto& p : cfg.f) f.push_back(poly_json(p));
  for (const auto& p : cfg.alpha) a.push_back(poly_json(p));
  doc["sequence"]["f"] = std::move(f);
  doc["sequence"]["alpha"] = std::move(a);

  Json job = Json::object();
  if (cfg.zeta) job["zeta"] = {{"m", cfg.zeta->order}, {"j", cfg.zeta->exponent}};
  if (cfg.n_range) job["n_range"] = {cfg.n_range->lo, cfg.n_range->hi};
  if (!cfg.S.empty()) {
    Json s = Json::array();
    for (const auto& sel : cfg.S) {
      if (sel.index)
        s.push_back({{"p", sel.p}, {"index", *sel.index}});
      else
        s.push_back(sel.p);
    }
    job["S"] = std::move(s);
  }
  if (cfg.r) job["r"] = *cfg.r;
  if (cfg.eps) job["eps"] = rational_json(*cfg.eps);
  if (cfg.M_max) job["M_max"] = *cfg.M_max;
  if (cfg.D_max) job["D_max"] = *cfg.D_max;
  job["precision"] = cfg.precision;
  if (cfg.height_cap) job["height_cap"] = cfg.height_cap->get_str();
  if (cfg.matveev_C) job["matveev_C"] = rational_json(*cfg.matveev_C);
  if (cfg.budget_ms) job["budget_ms"] = *cfg.budget_ms;
  job["workers"] = cfg.workers;
  job["allow_zero"] = cfg.allow_zero;
  job["allow_negative"] = cfg.allow_negative;
  doc["job"] = std::move(job);
  return doc.dump(2) + "\n";
}

}  // namespace cyclorec
