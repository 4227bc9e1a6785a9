#pragma once

#include <string>

namespace infoops {

enum class Decision { Positive, Negative, ParseFailure };

std::string to_string(Decision d);
Decision decision_from_string(const std::string& s);

struct BinaryDecision {
  Decision value = Decision::ParseFailure;
  std::string raw;  // completion kept verbatim for audit
  double latency_ms = 0.0;
};

// Case-insensitive scan for the first standalone word "true" or "false".
// Never throws; anything else maps to ParseFailure.
BinaryDecision parse_binary(const std::string& completion);

}  // namespace infoops
