#pragma once

// JSON and CSV rendering of specs, invariants and check results.

#include <json.hpp>

#include <string>
#include <vector>

#include "fano/bounds.hpp"
#include "fano/search.hpp"
#include "fano/tower.hpp"

namespace fano::cli {

using Json = nlohmann::ordered_json;

/// Rejected spec document; maps to exit code 2.
class SpecFileError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json spec_to_json(const TowerSpec& spec);
/// Strict schema: {"base_dim": int >= 1, "levels": [{"r": int >= 0, "c": int >= 0}, ...]}
/// with no other keys.
TowerSpec spec_from_json(const Json& doc);
TowerSpec read_spec_file(const std::string& path);

/// Significant digits used for interval endpoints in reports.
constexpr int kEndpointDigits = 30;

/// "d.ddddde+X" with six significant digits (truncated).
std::string scientific(const ExactInt& v);
std::size_t decimal_digits(const ExactInt& v);

/// Decimal string; with `brief` only the digit count and scientific form.
Json exact_to_json(const ExactInt& v, bool brief);
Json interval_to_json(const RealInterval& iv);
Json verdict_to_json(const Verdict& v);
Json invariants_to_json(const FanoInvariants& inv, long precision_bits, bool brief);
Json check_to_json(const CheckResult& r, bool brief);
Json chain_to_json(const ChainReport& r);
Json known_bound_to_json(const KnownBound& b, bool brief);
Json search_row_to_json(const SearchRow& row, bool brief);

std::string ratio_csv_header();
std::string ratio_csv_line(const SearchRow& row);

}  // namespace fano::cli
