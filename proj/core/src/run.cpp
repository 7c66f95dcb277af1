#include "cyclorec/run.hpp"

#include <fstream>
#include <json.hpp>
#include <map>

#include "cyclorec/bounds.hpp"
#include "cyclorec/errors.hpp"
#include "cyclorec/ideal.hpp"
#include "cyclorec/scan.hpp"
#include "cyclorec/sunit.hpp"

namespace cyclorec {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kDigits = 12;

const std::vector<std::pair<Command, std::string>>& table() {
  static const std::vector<std::pair<Command, std::string>> t{
      {Command::Terms, "terms"}, {Command::Factor, "factor"}, {Command::Growth, "growth"},
      {Command::Spart, "spart"}, {Command::Scan, "scan"},     {Command::Bounds, "bounds"},
      {Command::Solve, "solve"}};
  return t;
}

class Csv {
 public:
  Csv(const fs::path& path, const std::vector<std::string>& columns) : out_(path) {
    if (!out_) throw BadInput("cannot write " + path.string());
    out_ << "#v1";
    for (size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : " ") << columns[i];
    out_ << '\n';
  }
  void row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

std::string num(const RealBall& x) { return x.mid_string(kDigits); }
std::string num(const std::optional<RealBall>& x) { return x ? num(*x) : ""; }

Json constant_json(const NamedConstant& c) {
  return {{"value", num(c.value)}, {"enclosure", c.value.to_string(kDigits)}, {"formula", c.formula}};
}

Json report_json(const BoundReport& rep) {
  Json j;
  j["pipeline"] = to_string(rep.pipeline);
  j["verdict"] = rep.verdict;
  Json consts = Json::object();
  for (const auto& c : rep.constants) consts[c.name] = constant_json(c);
  j["constants"] = std::move(consts);
  Json th = Json::object();
  for (const auto& [k, v] : rep.thresholds) th[k] = v;
  j["thresholds"] = std::move(th);
  return j;
}

struct Context {
  const JobConfig& cfg;
  fs::path out;
  RunResult result;
  bool budget_hit = false;

  fs::path artifact(const std::string& name) {
    result.artifacts.push_back(out / name);
    return out / name;
  }
  void write_json(const std::string& name, const Json& j) {
    std::ofstream f(artifact(name));
    if (!f) throw BadInput("cannot write " + name);
    f << j.dump(2) << '\n';
  }
  ReportOptions options() const {
    ReportOptions o;
    o.workers = cfg.workers;
    o.prec = cfg.precision;
    if (cfg.budget_ms) o.deadline = deadline_after(std::chrono::milliseconds(*cfg.budget_ms));
    return o;
  }
  SpecializedLRS specialized() const {
    const auto& z = cfg.root();
    return specialize(cfg.sequence(), z.order, z.exponent, cfg.precision);
  }
  Json header(Command cmd) const {
    Json j;
    j["command"] = to_string(cmd);
    if (cfg.zeta) j["zeta"] = {{"m", cfg.zeta->order}, {"j", cfg.zeta->exponent}};
    if (cfg.n_range) j["n_range"] = {cfg.n_range->lo, cfg.n_range->hi};
    return j;
  }
};

std::vector<PrimeIdeal> ideals(const JobConfig& cfg, const FieldPtr& K) {
  std::vector<PrimeIdeal> out;
  for (const auto& sel : cfg.S) {
    const auto& above = split_prime(K, sel.p);
    if (!sel.index) {
      out.insert(out.end(), above.begin(), above.end());
    } else if (*sel.index < above.size()) {
      out.push_back(above[*sel.index]);
    } else {
      throw ValidationError("job.S: prime " + std::to_string(sel.p) + " has " + std::to_string(above.size()) +
                            " ideals above it, index " + std::to_string(*sel.index) + " requested");
    }
  }
  return out;
}

std::vector<unsigned long> rational_primes(const JobConfig& cfg) {
  std::vector<unsigned long> out;
  for (const auto& sel : cfg.S) {
    if (sel.index) throw ValidationError("job.S: this command takes rational primes, not ideal selectors");
    out.push_back(sel.p);
  }
  if (out.empty()) throw EmptyS("job.S must not be empty");
  return out;
}

template <class T>
const T& need(const std::optional<T>& v, const char* key) {
  if (!v) throw ValidationError(std::string("job.") + key + " is required for this command");
  return *v;
}

void require_nonzero_terms(const SpecializedLRS& Lz, NRange range) {
  const auto terms = terms_recurrence(Lz, range.hi);
  for (unsigned long n = range.lo; n <= range.hi; ++n)
    if (terms[n].is_zero()) throw DegenerateTerm("U_n = 0 at n = " + std::to_string(n));
}

void cmd_terms(Context& ctx) {
  const auto Lz = ctx.specialized();
  const NRange range = ctx.cfg.range();
  const auto terms = terms_recurrence(Lz, range.hi);
  std::vector<std::string> cols{"n"};
  for (unsigned i = 0; i < Lz.field()->degree(); ++i) cols.push_back("c" + std::to_string(i));
  Csv csv(ctx.artifact("terms.csv"), cols);
  for (unsigned long n = range.lo; n <= range.hi; ++n) {
    std::vector<std::string> row{std::to_string(n)};
    for (const auto& c : terms[n].coords()) row.push_back(format_rational(c));
    csv.row(row);
  }
}

void cmd_factor(Context& ctx, bool need_s) {
  const auto Lz = ctx.specialized();
  const NRange range = ctx.cfg.range();
  const auto S = ideals(ctx.cfg, Lz.field());
  if (need_s && S.empty()) throw EmptyS("job.S must not be empty");
  require_nonzero_terms(Lz, range);
  const auto facts = factor_terms(Lz, range, ctx.options());
  Csv csv(ctx.artifact("factors.csv"),
          {"n", "absN", "P", "radicalN", "sPartN", "cofactorN", "certified", "ideals"});
  for (size_t i = 0; i < facts.size(); ++i) {
    const auto& fact = facts[i];
    std::vector<std::string> row{std::to_string(range.lo + i), fact.norm_abs.get_str()};
    if (fact.complete()) {
      const auto gp = greatest_prime_and_radical(fact);
      row.push_back(gp.largest_norm.get_str());
      row.push_back(gp.radical_norm.get_str());
    } else {
      row.insert(row.end(), {"", ""});
      ctx.budget_hit = true;
    }
    std::string sp, cof;
    if (!S.empty()) {
      try {
        const auto part = s_part(fact, S);
        sp = part.s_part_norm.get_str();
        cof = part.cofactor_norm.get_str();
      } catch (const IncompleteFactorization&) {
        ctx.budget_hit = true;
      }
    }
    row.push_back(sp);
    row.push_back(cof);
    row.push_back(fact.certified ? "1" : "0");
    std::string ids = fact.serialize();
    if (!fact.complete()) ids += " * [unfactored " + fact.unfactored.get_str() + "]";
    row.push_back(ids);
    csv.row(row);
  }
}

// Shared by growth and bounds: per-n table plus the greatest-prime and S-part constant panels.
Json growth_tables(Context& ctx, const SpecializedLRS& Lz) {
  const NRange range = ctx.cfg.range();
  const auto S = ideals(ctx.cfg, Lz.field());
  require_nonzero_terms(Lz, range);
  const ReportOptions opt = ctx.options();
  const auto facts = factor_terms(Lz, range, opt);
  const auto t1 = greatest_prime_report(Lz, range, facts, opt.prec);
  std::optional<BoundReport> t2;
  if (!S.empty()) t2 = s_part_report(Lz, S, range, facts, opt.prec);

  Csv csv(ctx.artifact("bounds.csv"), {"n", "absN", "P", "radicalN", "sPartN", "c1", "c2", "e_n", "case"});
  for (size_t i = 0; i < t1.rows.size(); ++i) {
    const auto& a = t1.rows[i];
    ctx.budget_hit = ctx.budget_hit || !a.complete;
    std::vector<std::string> row{std::to_string(a.n), a.abs_norm.get_str(),
                                 a.complete ? a.largest_norm.get_str() : "",
                                 a.complete ? a.radical_norm.get_str() : ""};
    if (t2 && t2->rows[i].s_part_norm) {
      const auto& b = t2->rows[i];
      row.push_back(b.s_part_norm->get_str());
      row.push_back(num(a.c1));
      row.push_back(num(a.c2));
      row.push_back(num(b.e_n));
      row.push_back(b.split_case);
    } else {
      ctx.budget_hit = ctx.budget_hit || t2.has_value();
      row.push_back("");
      row.push_back(num(a.c1));
      row.push_back(num(a.c2));
      row.insert(row.end(), {"", ""});
    }
    csv.row(row);
  }
  Json pipes = Json::array();
  pipes.push_back(report_json(t1));
  if (t2) pipes.push_back(report_json(*t2));
  return pipes;
}

std::pair<Json, SUnitBound> solver_bound(const JobConfig& cfg, const SpecializedLRS& Lz) {
  SUnitBoundInput in;
  in.primes = rational_primes(cfg);
  in.r = need(cfg.r, "r");
  in.eps = need(cfg.eps, "eps");
  if (cfg.matveev_C) in.matveev_C = RealBall::exact(*cfg.matveev_C, std::max<Precision>(cfg.precision, 256));
  in.prec = std::max<Precision>(cfg.precision, 256);
  const auto b = s_unit_bound(Lz, in);
  Json j;
  j["pipeline"] = to_string(Pipeline::SUnit);
  Json consts = Json::object();
  for (const auto& c : b.constants) consts[c.name] = constant_json(c);
  j["constants"] = std::move(consts);
  j["n_bound"] = num(b.n_bound);
  j["log_C5"] = num(b.log_C5);
  return {j, b};
}

void cmd_growth(Context& ctx, Command cmd) {
  const auto Lz = ctx.specialized();
  Json doc = ctx.header(cmd);
  doc["pipelines"] = growth_tables(ctx, Lz);
  if (cmd == Command::Bounds && (ctx.cfg.r || ctx.cfg.eps)) doc["pipelines"].push_back(solver_bound(ctx.cfg, Lz).first);
  ctx.write_json("constants.json", doc);
}

void cmd_scan(Context& ctx) {
  const ParamLRS L = ctx.cfg.sequence();
  const unsigned M_max = need(ctx.cfg.M_max, "M_max");
  const auto scan = scan_multi_dominant(L, M_max, ctx.cfg.workers);
  {
    Csv csv(ctx.artifact("scan.csv"), {"m", "j", "tie_size"});
    for (const auto& r : scan.rows) csv.row({std::to_string(r.m), std::to_string(r.j), std::to_string(r.tie_size)});
  }
  if (ctx.cfg.D_max) {
    Csv csv(ctx.artifact("torsion.csv"), {"i", "j", "r", "s", "u", "shape"});
    for (size_t i = 0; i < L.order(); ++i)
      for (size_t j = i + 1; j < L.order(); ++j) {
        const auto v = torsion_factor_check(L.alpha()[i], L.alpha()[j], *ctx.cfg.D_max);
        for (const auto& w : v.witnesses)
          csv.row({std::to_string(i + 1), std::to_string(j + 1), std::to_string(w.r), std::to_string(w.s),
                   std::to_string(w.u_num) + "/" + std::to_string(w.u_den), to_string(w.shape)});
      }
  }
  const auto budget = exclusion_budget(L.degree_bound(), static_cast<unsigned>(L.order()));
  Json doc = ctx.header(Command::Scan);
  doc["M_max"] = M_max;
  doc["rows"] = scan.rows.size();
  doc["two_way"] = scan.two_way;
  doc["multi_way"] = scan.multi_way;
  doc["exceptional_skipped"] = scan.exceptional_skipped;
  doc["exclusion_budget"] = {{"total", format_rational(budget.total)},
                             {"two_dominant", format_rational(budget.two_dominant)},
                             {"per_pair", format_rational(budget.per_pair)},
                             {"three_dominant", format_rational(budget.three_dominant)}};
  ctx.write_json("constants.json", doc);
}

void cmd_solve(Context& ctx) {
  const auto Lz = ctx.specialized();
  const NRange range = ctx.cfg.range();
  SUnitConfig sc;
  sc.S = rational_primes(ctx.cfg);
  sc.r = need(ctx.cfg.r, "r");
  sc.eps = need(ctx.cfg.eps, "eps");
  sc.n_min = range.lo;
  sc.n_max = range.hi;
  sc.height_cap = need(ctx.cfg.height_cap, "height_cap");
  sc.membership.zero = ctx.cfg.allow_zero;
  sc.membership.negative = ctx.cfg.allow_negative;
  sc.workers = ctx.cfg.workers;
  const auto res = solve(Lz, sc);

  std::vector<std::string> cols{"n"};
  for (unsigned i = 1; i <= sc.r; ++i) cols.push_back("w_" + std::to_string(i));
  {
    Csv csv(ctx.artifact("solutions.csv"), cols);
    for (const auto& s : res.solutions) {
      std::vector<std::string> row{std::to_string(s.n)};
      for (const auto& w : s.w) row.push_back(w.get_str());
      csv.row(row);
    }
  }
  std::ofstream log(ctx.artifact("solve.log"));
  for (const auto& k : res.skipped) {
    log << "skip n=" << k.n << ": " << k.reason << '\n';
    ctx.budget_hit = ctx.budget_hit || k.budget;
  }
  for (const auto& s : res.solutions)
    if (s.dependence) {
      log << "dependent n=" << s.n << " w_r=" << s.w.back().get_str() << ": " << *s.dependence << '\n';
    }

  Json doc = ctx.header(Command::Solve);
  doc["solutions"] = res.solutions.size();
  doc["skipped"] = res.skipped.size();
  if (ctx.cfg.matveev_C) {
    auto [j, b] = solver_bound(ctx.cfg, Lz);
    bool consistent = true;
    for (const auto& s : res.solutions)
      consistent = consistent && RealBall::exact(mpz_class(s.n), b.n_bound.precision()).certainly_less(b.n_bound);
    j["consistent"] = consistent;
    doc["pipelines"] = Json::array({j});
  }
  ctx.write_json("constants.json", doc);
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [c, n] : table())
    if (n == name) return c;
  return std::nullopt;
}

std::string to_string(Command c) {
  for (const auto& [k, n] : table())
    if (k == c) return n;
  return "?";
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [c, n] : table()) v.push_back(n);
    return v;
  }();
  return names;
}

RunResult run(Command cmd, const JobConfig& cfg, const fs::path& out_dir) {
  Context ctx{cfg, out_dir, {}, false};
  try {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw BadInput("cannot create output directory " + out_dir.string());
    switch (cmd) {
      case Command::Terms: cmd_terms(ctx); break;
      case Command::Factor: cmd_factor(ctx, false); break;
      case Command::Spart: cmd_factor(ctx, true); break;
      case Command::Growth:
      case Command::Bounds: cmd_growth(ctx, cmd); break;
      case Command::Scan: cmd_scan(ctx); break;
      case Command::Solve: cmd_solve(ctx); break;
    }
    if (ctx.budget_hit) {
      ctx.result.exit_code = static_cast<int>(ErrorClass::Budget);
      ctx.result.message = "budget exhausted for some n; partial results written";
    }
  } catch (const ExceptionalParameter& e) {
    ctx.result.exit_code = static_cast<int>(e.error_class());
    ctx.result.message = e.what();
    for (const auto& r : e.reasons()) ctx.result.message += "\n  " + r;
  } catch (const Error& e) {
    ctx.result.exit_code = static_cast<int>(e.error_class());
    ctx.result.message = e.what();
  }
  return ctx.result;
}

}  // namespace cyclorec
