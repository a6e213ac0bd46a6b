#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fano/bounds.hpp"
#include "fano/chow.hpp"
#include "fano/parallel.hpp"
#include "fano/search.hpp"
#include "fano/tower.hpp"
#include "report.hpp"

namespace fano::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string dump(const Json& j) { return j.dump(); }

// ------------------------------------------------------------ tower options

struct BuilderOpts {
  bool batyrev = false;
  bool prop1 = false;
  bool index_variant = false;
  bool prop2 = false;
  bool clamp = false;
  long n = 0;
  long k = 2;
  std::string spec_file;
};

void add_builder_options(CLI::App* app, BuilderOpts& o, bool allow_spec) {
  app->add_flag("--batyrev", o.batyrev, "P(O + O(n-1)) over P^(n-1)");
  app->add_flag("--prop1", o.prop1, "index 1, Picard number 2 tower with r = [n/log n]");
  app->add_flag("--index-variant", o.index_variant, "Picard number 2 tower of index r + 1");
  app->add_flag("--prop2", o.prop2, "Picard number k tower");
  app->add_option("-n", o.n, "dimension");
  app->add_option("-k", o.k, "Picard number for --prop2")->capture_default_str();
  app->add_flag("--clamp", o.clamp, "cap r so the construction stays valid");
  if (allow_spec) app->add_option("--spec", o.spec_file, "tower spec JSON file");
}

TowerSpec resolve_spec(const BuilderOpts& o) {
  const int chosen = int(o.batyrev) + int(o.prop1) + int(o.index_variant) + int(o.prop2) + int(!o.spec_file.empty());
  if (chosen != 1) throw UsageError("choose exactly one of --spec, --batyrev, --prop1, --index-variant, --prop2");
  if (!o.spec_file.empty()) return read_spec_file(o.spec_file);
  if (o.n <= 0) throw UsageError("-n is required and must be positive");
  if (o.batyrev) return build_batyrev(o.n);
  if (o.prop1) return build_prop1(o.n);
  if (o.index_variant) return build_index_variant(o.n, o.clamp);
  return build_prop2(o.n, o.k, o.clamp ? BuildMode::Clamp : BuildMode::Strict);
}

// ----------------------------------------------------------------- verdicts

struct Tally {
  long checked = 0;
  long holds = 0;
  long fails = 0;
  long undecided = 0;
  long skipped = 0;

  void add(const Verdict& v) {
    ++checked;
    if (v.holds()) ++holds;
    else if (v.fails()) ++fails;
    else ++undecided;
  }
  void add(bool ok) { add(Verdict{ok ? Verdict::Kind::True : Verdict::Kind::False, 0}); }

  int exit_code() const {
    if (fails > 0) return kExitCheckFailed;
    if (undecided > 0) return kExitUndecided;
    return kExitOk;
  }

  Json to_json(const std::string& what) const {
    return Json{{"summary", what}, {"checked", checked}, {"true", holds},
                {"false", fails},   {"undecided", undecided}, {"skipped", skipped}};
  }
};

struct RangeOpts {
  long from = 0;
  long to = 0;
  long k_from = 2;
  long k_to = 7;
  std::optional<long> k;
  long precision_cap = kDefaultPrecisionCap;
  unsigned jobs = 1;
  bool timings = false;
  bool brief = false;

  std::vector<std::pair<long, long>> grid(bool with_k) const {
    if (from > to) throw UsageError("--from must not exceed --to");
    long k0 = k.value_or(k_from);
    long k1 = k.value_or(k_to);
    if (!with_k) k0 = k1 = 0;
    if (with_k && (k0 < 2 || k0 > k1)) throw UsageError("need 2 <= k-from <= k-to");
    std::vector<std::pair<long, long>> out;
    for (long kk = k0; kk <= k1; ++kk) {
      for (long n = from; n <= to; ++n) out.emplace_back(n, kk);
    }
    return out;
  }
};

void add_range_options(CLI::App* app, RangeOpts& o, long from, long to, bool with_k) {
  o.from = from;
  o.to = to;
  app->add_option("--from", o.from, "first n")->capture_default_str();
  app->add_option("--to", o.to, "last n")->capture_default_str();
  if (with_k) {
    app->add_option("-k", o.k, "single Picard number");
    app->add_option("--k-from", o.k_from, "first Picard number")->capture_default_str();
    app->add_option("--k-to", o.k_to, "last Picard number")->capture_default_str();
  }
  app->add_option("--precision-cap", o.precision_cap, "maximum working precision in bits")
      ->capture_default_str()
      ->check(CLI::Range(32L, 1L << 30));
  app->add_option("-j,--jobs", o.jobs, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
  app->add_flag("--timings", o.timings, "add elapsed_ms fields");
  app->add_flag("--brief", o.brief, "omit full decimal expansions of exact integers");
}

/// Runs `fn` for every grid point on the worker pool; records come back in
/// grid order.
template <class Fn>
std::vector<Json> sweep(const RangeOpts& o, const std::vector<std::pair<long, long>>& grid, Fn fn) {
  return parallel_map(grid.size(), o.jobs, [&](std::size_t i) {
    const auto t0 = Clock::now();
    Json j = fn(grid[i].first, grid[i].second);
    if (o.timings) j["elapsed_ms"] = ms_since(t0);
    return j;
  });
}

const std::string& verdict_of(const Json& j) { return j.at("verdict").get_ref<const std::string&>(); }

void count(Tally& tally, const Json& j) {
  const auto& v = verdict_of(j);
  Verdict::Kind kind = Verdict::Kind::Undecided;
  if (v == to_string(Verdict::Kind::True)) kind = Verdict::Kind::True;
  else if (v == to_string(Verdict::Kind::False)) kind = Verdict::Kind::False;
  tally.add(Verdict{kind, 0});
}

// ------------------------------------------------------------ verify sweeps

int verify_prop1(std::ostream& out, const RangeOpts& o) {
  if (o.from < 3) throw UsageError("prop1 needs n >= 3");
  Tally tally;
  for (const Json& j : sweep(o, o.grid(false), [&](long n, long) {
         return check_to_json(check_prop1(n, o.precision_cap), o.brief);
       })) {
    count(tally, j);
    out << dump(j) << '\n';
  }
  out << dump(tally.to_json("prop1")) << '\n';
  return tally.exit_code();
}

int verify_index_variant(std::ostream& out, const RangeOpts& o) {
  if (o.from < 4) throw UsageError("index-variant needs n >= 4");
  Tally tally;
  Json clamped = Json::array();
  for (const Json& j : sweep(o, o.grid(false), [&](long n, long) {
         return check_to_json(check_index_variant(n, o.precision_cap), o.brief);
       })) {
    count(tally, j);
    if (j.value("clamped", false)) clamped.push_back(j["n"]);
    out << dump(j) << '\n';
  }
  Json summary = tally.to_json("index_variant");
  summary["clamped_n"] = std::move(clamped);
  out << dump(summary) << '\n';
  return tally.exit_code();
}

int verify_prop2(std::ostream& out, const RangeOpts& o) {
  if (o.from < 4) throw UsageError("prop2 needs n >= 4");
  Tally tally;
  for (const Json& j : sweep(o, o.grid(true), [&](long n, long k) {
         return check_to_json(check_prop2(n, k, o.precision_cap), o.brief);
       })) {
    out << dump(j) << '\n';
    if (j.contains("construction_error")) {
      ++tally.skipped;
      continue;
    }
    count(tally, j);
    if (!j["structure_ok"].get<bool>()) tally.add(false);
  }
  out << dump(tally.to_json("prop2")) << '\n';
  return tally.exit_code();
}

int verify_chain(std::ostream& out, const RangeOpts& o) {
  if (o.from < 4) throw UsageError("chain needs n >= 4");
  Tally tally;
  const auto records = sweep(o, o.grid(true), [&](long n, long k) -> Json {
    try {
      return chain_to_json(check_chain(n, k, o.precision_cap));
    } catch (const std::invalid_argument& e) {
      return Json{{"check", "chain"}, {"n", n}, {"k", k}, {"construction_error", e.what()}};
    } catch (const InvalidConstruction& e) {
      return Json{{"check", "chain"}, {"n", n}, {"k", k}, {"construction_error", e.what()}};
    }
  });
  for (const Json& j : records) {
    out << dump(j) << '\n';
    if (j.contains("construction_error")) {
      ++tally.skipped;
      continue;
    }
    tally.add(j["level_ratios_hold"].get<bool>());
  }
  out << dump(tally.to_json("chain")) << '\n';
  return tally.exit_code();
}

int verify_thresholds(std::ostream& out, const RangeOpts& o) {
  for (auto c : {ThresholdCondition::Prop1Chain, ThresholdCondition::IndexVariantChain}) {
    const auto t0 = Clock::now();
    const ExactInt n = threshold(c, o.precision_cap);
    Json j{{"check", "threshold"}, {"condition", to_string(c)}, {"n_min", n.get_str()}};
    if (o.timings) j["elapsed_ms"] = ms_since(t0);
    out << dump(j) << '\n';
  }
  return kExitOk;
}

struct UpperBoundOpts {
  long index = 1;
  UpperBoundFlags flags;
  long precision = kDefaultStartPrecision;
};

int verify_upper_bounds(std::ostream& out, const RangeOpts& o, const UpperBoundOpts& u) {
  if (o.from < 1) throw UsageError("upper-bounds needs n >= 1");
  const auto records = sweep(o, o.grid(false), [&](long n, long) {
    Json bounds = Json::array();
    const RealInterval two_n = RealInterval::from_int(ExactInt(2 * n), u.precision);
    for (const auto& b : known_upper_bounds(n, u.index, u.flags, u.precision)) {
      Json jb = known_bound_to_json(b, o.brief);
      if (!b.log_scale) jb["over_2n"] = interval_to_json(b.value / two_n);
      bounds.push_back(std::move(jb));
    }
    const RealInterval batyrev = delta(build_batyrev(n), u.precision);
    return Json{{"check", "upper_bounds"},
                {"n", n},
                {"index", u.index},
                {"bounds", std::move(bounds)},
                {"batyrev_delta", interval_to_json(batyrev)},
                {"batyrev_over_2n", interval_to_json(batyrev / two_n)}};
  });
  for (const Json& j : records) out << dump(j) << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------- search

struct SearchOpts {
  std::vector<long> n_list;
  long from = 0;
  long to = 0;
  bool csv = false;
  bool json = false;
  bool brief = false;
  long precision = kDefaultStartPrecision;
  long precision_cap = kDefaultPrecisionCap;
  unsigned jobs = 1;

  std::vector<long> ns(long min_n) const {
    std::vector<long> out = n_list;
    if (out.empty()) {
      if (from <= 0 || to < from) throw UsageError("give --n-list or --from/--to");
      for (long n = from; n <= to; ++n) out.push_back(n);
    }
    for (long n : out) {
      if (n < min_n) throw UsageError("n must be at least " + std::to_string(min_n));
    }
    return out;
  }
};

void add_search_options(CLI::App* app, SearchOpts& o) {
  app->add_option("--n-list", o.n_list, "comma separated dimensions")->delimiter(',');
  app->add_option("--from", o.from, "first n");
  app->add_option("--to", o.to, "last n");
  auto* csv = app->add_flag("--csv", o.csv, "CSV output");
  app->add_flag("--json", o.json, "single JSON array")->excludes(csv);
  app->add_flag("--brief", o.brief, "omit full decimal expansions of exact integers");
  app->add_option("-j,--jobs", o.jobs, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
}

void emit_rows(std::ostream& out, const SearchOpts& o, const std::string& header, const std::vector<Json>& rows,
               const std::vector<std::string>& csv_lines) {
  if (o.csv) {
    out << header << '\n';
    for (const auto& l : csv_lines) out << l << '\n';
  } else if (o.json) {
    out << Json(rows).dump() << '\n';
  } else {
    for (const auto& r : rows) out << dump(r) << '\n';
  }
}

int search_best_r(std::ostream& out, const SearchOpts& o) {
  const auto ns = o.ns(2);
  const auto res = parallel_map(ns.size(), o.jobs, [&](std::size_t i) { return best_r(ns[i]); });
  std::vector<Json> rows;
  std::vector<std::string> csv;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    rows.push_back(Json{{"n", ns[i]}, {"r_star", res[i].r}, {"degree", exact_to_json(res[i].degree, o.brief)}});
    csv.push_back(std::to_string(ns[i]) + ',' + std::to_string(res[i].r) + ',' +
                  std::to_string(decimal_digits(res[i].degree)));
  }
  emit_rows(out, o, "n,r_star,degree_digits", rows, csv);
  return kExitOk;
}

int search_best_ra(std::ostream& out, const SearchOpts& o) {
  const auto ns = o.ns(2);
  const auto res = parallel_map(ns.size(), o.jobs, [&](std::size_t i) { return best_ra(ns[i]); });
  std::vector<Json> rows;
  std::vector<std::string> csv;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const auto& b = res[i];
    rows.push_back(Json{{"n", ns[i]},
                        {"r_star", b.r},
                        {"a_star", b.a},
                        {"a_equals_s", b.a == ns[i] - b.r},
                        {"degree", exact_to_json(b.degree, o.brief)}});
    csv.push_back(std::to_string(ns[i]) + ',' + std::to_string(b.r) + ',' + std::to_string(b.a) + ',' +
                  std::to_string(decimal_digits(b.degree)));
  }
  emit_rows(out, o, "n,r_star,a_star,degree_digits", rows, csv);
  return kExitOk;
}

int search_ratio_table(std::ostream& out, const SearchOpts& o) {
  const auto ns = o.ns(3);
  const auto chunks = parallel_map(ns.size(), o.jobs, [&](std::size_t i) {
    return ratio_table(std::span<const long>(&ns[i], 1), o.precision, o.precision_cap).front();
  });
  std::vector<Json> rows;
  std::vector<std::string> csv;
  Tally tally;
  for (const auto& row : chunks) {
    rows.push_back(search_row_to_json(row, o.brief));
    csv.push_back(ratio_csv_line(row));
    tally.add(row.ratio_bound);
  }
  emit_rows(out, o, ratio_csv_header(), rows, csv);
  return tally.exit_code();
}

// -------------------------------------------------------------------- table

struct TableOpts {
  std::string family = "prop1";
  long k = 2;
  bool clamp = false;
  bool csv = false;
  long max_n = 600;
  long precision = kDefaultStartPrecision;
};

TowerSpec build_family(const std::string& family, long n, long k, bool clamp) {
  if (family == "batyrev") return build_batyrev(n);
  if (family == "prop1") return build_prop1(n);
  if (family == "index-variant") return build_index_variant(n, clamp);
  if (family == "prop2") return build_prop2(n, k, clamp ? BuildMode::Clamp : BuildMode::Strict);
  if (family == "projective") return TowerSpec{n, {}};
  throw UsageError("unknown family '" + family + "'");
}

int table_degrees(std::ostream& out, const RangeOpts& o, const TableOpts& t) {
  if (o.from < 1) throw UsageError("--from must be positive");
  const auto grid = o.grid(false);
  auto rows = parallel_map(grid.size(), o.jobs, [&](std::size_t i) -> std::pair<Json, std::string> {
    const long n = grid[i].first;
    const auto t0 = Clock::now();
    Json j{{"family", t.family}, {"n", n}};
    std::string line;
    try {
      const TowerSpec spec = build_family(t.family, n, t.k, t.clamp);
      const FanoInvariants inv = invariants(spec);
      const RealInterval d = inv.delta(t.precision);
      j["spec"] = spec_to_json(spec);
      j["invariants"] = invariants_to_json(inv, t.precision, o.brief);
      std::ostringstream os;
      os << n << ',' << inv.dim << ',' << inv.picard << ',' << inv.index << ',' << decimal_digits(inv.degree) << ','
         << d.lo().to_decimal(kEndpointDigits, MPFR_RNDD) << ',' << d.hi().to_decimal(kEndpointDigits, MPFR_RNDU);
      line = os.str();
    } catch (const InvalidConstruction& e) {
      j["construction_error"] = e.what();
    } catch (const UsageError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      j["construction_error"] = e.what();
    }
    if (o.timings) j["elapsed_ms"] = ms_since(t0);
    return {std::move(j), std::move(line)};
  });
  if (t.csv) out << "n,dim,picard,index,degree_digits,delta_lo,delta_hi\n";
  for (const auto& [j, line] : rows) {
    if (!t.csv) out << dump(j) << '\n';
    else if (!line.empty()) out << line << '\n';
  }
  return kExitOk;
}

int table_prop2_min_n(std::ostream& out, const RangeOpts& o, const TableOpts& t) {
  const auto ks = o.grid(true);
  std::vector<long> klist;
  for (const auto& [n, k] : ks) {
    if (klist.empty() || klist.back() != k) klist.push_back(k);
  }
  const auto mode = t.clamp ? BuildMode::Clamp : BuildMode::Strict;
  const auto mins = parallel_map(klist.size(), o.jobs,
                                 [&](std::size_t i) { return prop2_min_valid_n(klist[i], t.max_n, mode); });
  for (std::size_t i = 0; i < klist.size(); ++i) {
    Json j{{"k", klist[i]}, {"mode", to_string(mode)}, {"max_n", t.max_n}};
    j["min_n"] = mins[i] ? Json(*mins[i]) : Json(nullptr);
    out << dump(j) << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------------------- others

int do_construct(std::ostream& out, const BuilderOpts& b, bool json) {
  const TowerSpec spec = resolve_spec(b);
  if (json) out << dump(spec_to_json(spec)) << '\n';
  else out << spec.to_string() << '\n';
  return kExitOk;
}

int do_degree(std::ostream& out, const BuilderOpts& b, bool json, long precision) {
  const TowerSpec spec = resolve_spec(b);
  const ExactInt d = degree(spec);
  const RealInterval dl = delta(spec, precision);
  if (json) {
    out << dump(Json{{"spec", spec_to_json(spec)}, {"degree", exact_to_json(d, false)}, {"delta", interval_to_json(dl)}})
        << '\n';
  } else {
    out << d.get_str() << '\n';
    out << "delta [" << dl.lo().to_decimal(kEndpointDigits, MPFR_RNDD) << ", "
        << dl.hi().to_decimal(kEndpointDigits, MPFR_RNDU) << "] (" << dl.precision() << " bits)\n";
  }
  return kExitOk;
}

int do_invariants(std::ostream& out, const BuilderOpts& b, bool json, bool stages, long precision) {
  const TowerSpec spec = resolve_spec(b);
  const FanoInvariants inv = invariants(spec);
  if (json) {
    Json j = invariants_to_json(inv, precision, false);
    if (stages) {
      Json arr = Json::array();
      for (const auto& s : stage_invariants(spec)) arr.push_back(invariants_to_json(s, precision, false));
      j["stages"] = std::move(arr);
    }
    out << dump(j) << '\n';
    return kExitOk;
  }
  const RealInterval d = inv.delta(precision);
  out << "dim " << inv.dim << '\n'
      << "picard " << inv.picard << '\n'
      << "index " << inv.index << '\n'
      << "degree " << inv.degree.get_str() << '\n'
      << "gen_degree " << inv.gen_degree.get_str() << '\n'
      << "delta [" << d.lo().to_decimal(kEndpointDigits, MPFR_RNDD) << ", "
      << d.hi().to_decimal(kEndpointDigits, MPFR_RNDU) << "]\n";
  if (stages) {
    const auto st = stage_invariants(spec);
    for (std::size_t i = 0; i < st.size(); ++i) {
      out << "stage " << i << " dim " << st[i].dim << " picard " << st[i].picard << " index " << st[i].index
          << " degree " << st[i].degree.get_str() << '\n';
    }
  }
  return kExitOk;
}

struct OracleOpts {
  bool presentation = false;
  bool check = false;
  std::string order = "highest";
  std::uint64_t seed = 0;
};

int do_oracle(std::ostream& out, const BuilderOpts& b, const OracleOpts& o) {
  const TowerSpec spec = resolve_spec(b);
  const auto pres = chow::presentation(spec);
  if (o.presentation) {
    for (std::size_t g = 0; g < pres.generators(); ++g) out << "rule " << pres.rules[g].to_string() << '\n';
    out << "-K " << pres.anticanonical_class().to_string() << '\n';
  }
  chow::RewriteOrder order = chow::RewriteOrder::HighestLevelFirst;
  if (o.order == "lowest") order = chow::RewriteOrder::LowestLevelFirst;
  else if (o.order == "shuffled") order = chow::RewriteOrder::Shuffled;

  const chow::ChowPoly k = pres.anticanonical_class();
  chow::ChowPoly acc = chow::ChowPoly::constant(pres.generators(), 1);
  for (int i = 0; i < pres.dim; ++i) acc = chow::reduce(acc * k, pres, order, o.seed + static_cast<std::uint64_t>(i));
  const ExactInt d = chow::integrate(acc, pres);
  out << d.get_str() << '\n';
  if (o.check) {
    const ExactInt closed = degree(spec);
    out << (closed == d ? "closed form agrees" : "closed form differs: " + closed.get_str()) << '\n';
    if (closed != d) return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fano towers of projectivized split bundles: degrees, invariants and certified bounds", "fanodeg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fanodeg 0.1.0");

  std::function<int()> action;

  BuilderOpts construct_b;
  bool construct_json = false;
  auto* construct = app.add_subcommand("construct", "print the tower spec of a construction");
  add_builder_options(construct, construct_b, false);
  construct->add_flag("--json", construct_json, "spec as JSON");
  construct->callback([&] { action = [&] { return do_construct(out, construct_b, construct_json); }; });

  BuilderOpts degree_b;
  bool degree_json = false;
  long degree_prec = kDefaultStartPrecision;
  auto* degree_cmd = app.add_subcommand("degree", "exact anticanonical degree and its n-th root");
  add_builder_options(degree_cmd, degree_b, true);
  degree_cmd->add_flag("--json", degree_json, "JSON output");
  degree_cmd->add_option("--precision", degree_prec, "bits for the root interval")
      ->capture_default_str()
      ->check(CLI::Range(32L, 1L << 24));
  degree_cmd->callback([&] { action = [&] { return do_degree(out, degree_b, degree_json, degree_prec); }; });

  BuilderOpts inv_b;
  bool inv_json = false;
  bool inv_stages = false;
  long inv_prec = kDefaultStartPrecision;
  auto* inv_cmd = app.add_subcommand("invariants", "dimension, Picard number, index and degree");
  add_builder_options(inv_cmd, inv_b, true);
  inv_cmd->add_flag("--json", inv_json, "JSON output");
  inv_cmd->add_flag("--stages", inv_stages, "also list every sub-tower");
  inv_cmd->add_option("--precision", inv_prec, "bits for the root interval")
      ->capture_default_str()
      ->check(CLI::Range(32L, 1L << 24));
  inv_cmd->callback([&] { action = [&] { return do_invariants(out, inv_b, inv_json, inv_stages, inv_prec); }; });

  BuilderOpts oracle_b;
  OracleOpts oracle_o;
  auto* oracle_cmd = app.add_subcommand("oracle", "degree by rewriting in the Chow ring");
  add_builder_options(oracle_cmd, oracle_b, true);
  oracle_cmd->add_flag("--presentation", oracle_o.presentation, "print the rewrite rules");
  oracle_cmd->add_flag("--check", oracle_o.check, "compare with the closed form");
  oracle_cmd->add_option("--order", oracle_o.order, "rewrite order")
      ->capture_default_str()
      ->check(CLI::IsMember({"highest", "lowest", "shuffled"}));
  oracle_cmd->add_option("--seed", oracle_o.seed, "seed for --order shuffled")->capture_default_str();
  oracle_cmd->callback([&] { action = [&] { return do_oracle(out, oracle_b, oracle_o); }; });

  auto* verify = app.add_subcommand("verify", "certified checks over ranges of n");
  verify->require_subcommand(1);
  RangeOpts v_p1, v_iv, v_p2, v_chain, v_thr, v_ub;
  UpperBoundOpts ub;
  auto* vp1 = verify->add_subcommand("prop1", "degree >= (3n^2/(10 log n))^n");
  add_range_options(vp1, v_p1, 3, 100, false);
  vp1->callback([&] { action = [&] { return verify_prop1(out, v_p1); }; });
  auto* viv = verify->add_subcommand("index-variant", "degree >= (n^2/(7 log n))^n with clamped r");
  add_range_options(viv, v_iv, 4, 100, false);
  viv->callback([&] { action = [&] { return verify_index_variant(out, v_iv); }; });
  auto* vp2 = verify->add_subcommand("prop2", "structure and degree bound of the Picard-k towers");
  add_range_options(vp2, v_p2, 4, 100, true);
  vp2->callback([&] { action = [&] { return verify_prop2(out, v_p2); }; });
  auto* vch = verify->add_subcommand("chain", "inequalities of the recursive step");
  add_range_options(vch, v_chain, 4, 100, true);
  vch->callback([&] { action = [&] { return verify_chain(out, v_chain); }; });
  auto* vth = verify->add_subcommand("thresholds", "smallest n where the asymptotic chains apply");
  add_range_options(vth, v_thr, 0, 0, false);
  vth->callback([&] { action = [&] { return verify_thresholds(out, v_thr); }; });
  auto* vub = verify->add_subcommand("upper-bounds", "known upper bounds on the degree root");
  add_range_options(vub, v_ub, 2, 20, false);
  vub->add_option("--index", ub.index, "Fano index")->capture_default_str()->check(CLI::PositiveNumber);
  vub->add_flag("--picard-one", ub.flags.picard_one, "Picard number one");
  vub->add_flag("--semistable", ub.flags.semistable, "semistable tangent bundle");
  vub->add_flag("--kahler-einstein", ub.flags.kahler_einstein, "Kahler-Einstein metric");
  vub->add_option("--precision", ub.precision, "bits")->capture_default_str()->check(CLI::Range(32L, 1L << 24));
  vub->callback([&] { action = [&] { return verify_upper_bounds(out, v_ub, ub); }; });

  auto* search = app.add_subcommand("search", "exhaustive search over single-level towers");
  search->require_subcommand(1);
  SearchOpts s_r, s_ra, s_tab;
  auto* sr = search->add_subcommand("best-r", "best r with a = n - r");
  add_search_options(sr, s_r);
  sr->callback([&] { action = [&] { return search_best_r(out, s_r); }; });
  auto* sra = search->add_subcommand("best-ra", "best (r, a)");
  add_search_options(sra, s_ra);
  sra->callback([&] { action = [&] { return search_best_ra(out, s_ra); }; });
  auto* stab = search->add_subcommand("ratio-table", "delta log n / n^2 at the best r");
  add_search_options(stab, s_tab);
  stab->add_option("--precision", s_tab.precision, "bits")->capture_default_str()->check(CLI::Range(32L, 1L << 24));
  stab->add_option("--precision-cap", s_tab.precision_cap, "maximum bits")
      ->capture_default_str()
      ->check(CLI::Range(32L, 1L << 30));
  stab->callback([&] { action = [&] { return search_ratio_table(out, s_tab); }; });

  auto* table = app.add_subcommand("table", "batch emission of invariants");
  table->require_subcommand(1);
  RangeOpts t_deg_r, t_min_r;
  TableOpts t_deg, t_min;
  auto* tdeg = table->add_subcommand("degrees", "one record per n for a family");
  add_range_options(tdeg, t_deg_r, 2, 50, false);
  tdeg->add_option("--family", t_deg.family, "batyrev, prop1, index-variant, prop2 or projective")
      ->capture_default_str()
      ->check(CLI::IsMember({"batyrev", "prop1", "index-variant", "prop2", "projective"}));
  tdeg->add_option("-k", t_deg.k, "Picard number for prop2")->capture_default_str();
  tdeg->add_flag("--clamp", t_deg.clamp, "clamped constructions");
  tdeg->add_flag("--csv", t_deg.csv, "CSV output");
  tdeg->add_option("--precision", t_deg.precision, "bits")->capture_default_str()->check(CLI::Range(32L, 1L << 24));
  tdeg->callback([&] { action = [&] { return table_degrees(out, t_deg_r, t_deg); }; });
  auto* tmin = table->add_subcommand("prop2-min-n", "smallest n where the Picard-k construction succeeds");
  add_range_options(tmin, t_min_r, 0, 0, true);
  tmin->add_option("--max-n", t_min.max_n, "search limit")->capture_default_str();
  tmin->add_flag("--clamp", t_min.clamp, "clamped constructions");
  tmin->callback([&] { action = [&] { return table_prop2_min_n(out, t_min_r, t_min); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    return action ? action() : kExitInvalidInput;
  } catch (const PrecisionCap& e) {
    err << "error: " << e.what() << '\n';
    return kExitUndecided;
  } catch (const PrecisionInsufficient& e) {
    err << "error: " << e.what() << '\n';
    return kExitUndecided;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const InvalidConstruction& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const IntegralityViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

}  // namespace fano::cli
