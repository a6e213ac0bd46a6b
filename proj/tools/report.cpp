#include "report.hpp"

#include <fstream>
#include <sstream>

namespace fano::cli {

namespace {

long require_int(const Json& v, const char* field, long min) {
  if (!v.is_number_integer()) throw SpecFileError(std::string("'") + field + "' must be an integer");
  const long x = v.get<long>();
  if (x < min) throw SpecFileError(std::string("'") + field + "' must be >= " + std::to_string(min));
  return x;
}

void require_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  if (!obj.is_object()) throw SpecFileError(where + " must be an object");
  for (const auto& [k, _] : obj.items()) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    if (!known) throw SpecFileError("unknown key '" + k + "' in " + where);
  }
  for (const char* k : keys) {
    if (!obj.contains(k)) throw SpecFileError(std::string("missing key '") + k + "' in " + where);
  }
}

}  // namespace

Json spec_to_json(const TowerSpec& spec) {
  Json levels = Json::array();
  for (const auto& l : spec.levels) levels.push_back(Json{{"r", l.r}, {"c", l.c}});
  return Json{{"base_dim", spec.base_dim}, {"levels", std::move(levels)}};
}

TowerSpec spec_from_json(const Json& doc) {
  require_keys(doc, {"base_dim", "levels"}, "spec");
  TowerSpec spec;
  spec.base_dim = require_int(doc["base_dim"], "base_dim", 1);
  if (!doc["levels"].is_array()) throw SpecFileError("'levels' must be an array");
  for (const auto& l : doc["levels"]) {
    require_keys(l, {"r", "c"}, "level");
    spec.levels.push_back(Level{require_int(l["r"], "r", 0), require_int(l["c"], "c", 0)});
  }
  return spec;
}

TowerSpec read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecFileError("cannot open spec file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SpecFileError("spec file '" + path + "' is not valid JSON: " + e.what());
  }
  return spec_from_json(doc);
}

std::size_t decimal_digits(const ExactInt& v) {
  return ExactInt(abs(v)).get_str().size();
}

std::string scientific(const ExactInt& v) {
  const std::string s = ExactInt(abs(v)).get_str();
  std::string out = v < 0 ? "-" : "";
  out += s[0];
  if (s.size() > 1) out += "." + s.substr(1, std::min<std::size_t>(5, s.size() - 1));
  out += "e+" + std::to_string(s.size() - 1);
  return out;
}

Json exact_to_json(const ExactInt& v, bool brief) {
  Json j;
  if (!brief) j["value"] = v.get_str();
  j["digits"] = decimal_digits(v);
  j["sci"] = scientific(v);
  return j;
}

Json interval_to_json(const RealInterval& iv) {
  return Json{{"lo", iv.lo().to_decimal(kEndpointDigits, MPFR_RNDD)},
              {"hi", iv.hi().to_decimal(kEndpointDigits, MPFR_RNDU)},
              {"precision_bits", iv.precision()}};
}

Json verdict_to_json(const Verdict& v) {
  return Json{{"verdict", to_string(v.kind)}, {"precision_bits", v.precision_bits}};
}

Json invariants_to_json(const FanoInvariants& inv, long precision_bits, bool brief) {
  return Json{{"dim", inv.dim},
              {"picard", inv.picard},
              {"index", inv.index},
              {"degree", exact_to_json(inv.degree, brief)},
              {"gen_degree", exact_to_json(inv.gen_degree, brief)},
              {"delta", interval_to_json(inv.delta(precision_bits))}};
}

Json check_to_json(const CheckResult& r, bool brief) {
  Json j{{"check", r.check}, {"n", r.n}};
  if (r.k) j["k"] = r.k;
  j["mode"] = to_string(r.mode);
  if (r.spec) j["spec"] = spec_to_json(*r.spec);
  if (r.invariants) {
    j["dim"] = r.invariants->dim;
    j["picard"] = r.invariants->picard;
    j["index"] = r.invariants->index;
    j["degree"] = exact_to_json(r.invariants->degree, brief);
  }
  if (r.check == "prop2") {
    j["expected_index"] = r.expected_index;
    j["hypothesis_ok"] = r.hypothesis_ok;
  }
  if (r.check == "index_variant") j["clamped"] = r.clamped;
  j["structure_ok"] = r.structure_ok;
  if (r.construction_error) j["construction_error"] = *r.construction_error;
  j["bound"] = r.bound;
  j["verdict"] = to_string(r.verdict.kind);
  j["precision_bits"] = r.verdict.precision_bits;
  return j;
}

Json chain_to_json(const ChainReport& r) {
  Json records = Json::array();
  for (const auto& rec : r.records) {
    records.push_back(Json{{"name", rec.name},
                           {"branch", rec.branch},
                           {"statement", rec.statement},
                           {"verdict", to_string(rec.verdict.kind)},
                           {"exact", rec.exact},
                           {"precision_bits", rec.verdict.precision_bits}});
  }
  Json levels = Json::array();
  for (const auto& l : r.level_ratios) {
    levels.push_back(Json{{"level", l.level},
                          {"n", l.n},
                          {"r", l.r},
                          {"s", l.s},
                          {"iota_y", l.iota_y},
                          {"lhs", l.lhs.get_str()},
                          {"rhs", l.rhs.get_str()},
                          {"holds", l.holds}});
  }
  return Json{{"check", "chain"},       {"n", r.n},           {"k", r.k},
              {"base_picard", r.base_picard}, {"r", r.r},     {"s", r.s},
              {"iota_y", r.iota_y},     {"branch", r.large_branch ? "large" : "small"},
              {"records", std::move(records)}, {"level_ratios", std::move(levels)},
              {"level_ratios_hold", r.level_ratios_hold()}};
}

Json known_bound_to_json(const KnownBound& b, bool brief) {
  Json j{{"name", b.name}, {"formula", b.formula}, {"applicable", b.applicable}, {"log_scale", b.log_scale}};
  j[b.log_scale ? "log_value" : "value"] = interval_to_json(b.value);
  if (b.exact) j["exact"] = exact_to_json(*b.exact, brief || decimal_digits(*b.exact) > 100000);
  return j;
}

Json search_row_to_json(const SearchRow& row, bool brief) {
  return Json{{"n", row.n},
              {"r_star", row.r_star},
              {"a_star", row.a_star},
              {"degree", exact_to_json(row.degree, brief)},
              {"delta", interval_to_json(row.delta)},
              {"ratio", interval_to_json(row.ratio)},
              {"r_offset", interval_to_json(row.r_offset)},
              {"ratio_at_least_3_10", to_string(row.ratio_bound.kind)}};
}

std::string ratio_csv_header() { return "n,r_star,a_star,degree_digits,delta_lo,delta_hi,ratio_lo,ratio_hi"; }

std::string ratio_csv_line(const SearchRow& row) {
  std::ostringstream os;
  os << row.n << ',' << row.r_star << ',' << row.a_star << ',' << decimal_digits(row.degree) << ','
     << row.delta.lo().to_decimal(kEndpointDigits, MPFR_RNDD) << ','
     << row.delta.hi().to_decimal(kEndpointDigits, MPFR_RNDU) << ','
     << row.ratio.lo().to_decimal(kEndpointDigits, MPFR_RNDD) << ','
     << row.ratio.hi().to_decimal(kEndpointDigits, MPFR_RNDU);
  return os.str();
}

}  // namespace fano::cli
