// JSON forms of the library's values (nlohmann::json).

#pragma once

#include "json.hpp"

#include "bcc/bell.hpp"
#include "bcc/ccp.hpp"
#include "bcc/simulate.hpp"
#include "bcc/state.hpp"

namespace bcc {

using Json = nlohmann::json;

/// Rounds every floating-point number in the document to 12 significant
/// digits, in place.
void round_numbers(Json& doc, int significant_digits = 12);

/// Integral doubles become JSON integers; everything else stays a double.
Json number(double v);

/// Row-major array of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& m);
/// Inverse of matrix_to_json; the entry count must be a perfect square.
/// Throws std::invalid_argument on malformed input.
ComplexMatrix matrix_from_json(const Json& doc);

Json to_json(const StateReport& report);

/// {"n": 3, "settings": m, "g": [[[...]]] (g[x1][x2][x3]), "bound": B}
Json to_json(const FullCorrelationInequality& ineq);
/// Throws std::invalid_argument on a malformed table.
FullCorrelationInequality inequality_from_json(const Json& doc);

/// {"A": [a(first), a(first + 1), ...], "B": [...], "C": [...]}
Json to_json(const DeterministicStrategy& strategy, int first_setting = 0);

/// {"protocol", "shots", "successes", "p_hat", "stderr", "seed", "shards",
///  "p_exact", "p_classical_exact", "z_vs_classical", "wall_time_s"}
Json to_json(const SimulationReport& report);
Json to_json(const GapReport& report);

}  // namespace bcc
