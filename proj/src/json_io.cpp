#include "bcc/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace bcc {

namespace {

double round_to(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::stod(buf);
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

void round_numbers(Json& doc, int significant_digits) {
  if (doc.is_number_float()) {
    doc = round_to(doc.get<double>(), significant_digits);
  } else if (doc.is_structured()) {
    for (auto& child : doc) round_numbers(child, significant_digits);
  }
}

Json number(double v) {
  if (std::isfinite(v) && std::nearbyint(v) == v && std::abs(v) < 9.0e15) {
    return static_cast<std::int64_t>(v);
  }
  return finite_or_null(v);
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (const Complex& z : m.entries()) out.push_back({z.real(), z.imag()});
  return out;
}

ComplexMatrix matrix_from_json(const Json& doc) {
  if (!doc.is_array()) throw std::invalid_argument("matrix JSON: expected an array of [re, im] pairs");
  const auto count = doc.size();
  const auto dim = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(count))));
  if (dim == 0 || dim * dim != count) {
    throw std::invalid_argument("matrix JSON: entry count " + std::to_string(count) +
                                " is not a positive perfect square");
  }
  std::vector<Complex> entries;
  entries.reserve(count);
  for (const auto& pair : doc) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw std::invalid_argument("matrix JSON: each entry must be [re, im]");
    }
    entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return ComplexMatrix(dim, std::move(entries));
}

Json to_json(const StateReport& r) {
  return Json{
      {"trace_deviation", r.trace_deviation},
      {"hermiticity_deviation", r.hermiticity_deviation},
      {"min_eigenvalue", r.min_eigenvalue},
      {"permutation_symmetry_deviation", r.permutation_symmetry_deviation},
      {"max_permutation_deviation", r.max_permutation_deviation()},
      {"pt_invariance_deviation", r.pt_invariance_deviation},
      {"pt_min_eigenvalues", r.pt_min_eigenvalues},
  };
}

Json to_json(const FullCorrelationInequality& ineq) {
  const int m = ineq.settings();
  Json g = Json::array();
  for (int x1 = 0; x1 < m; ++x1) {
    Json plane = Json::array();
    for (int x2 = 0; x2 < m; ++x2) {
      Json row = Json::array();
      for (int x3 = 0; x3 < m; ++x3) row.push_back(number(ineq.g({x1, x2, x3})));
      plane.push_back(std::move(row));
    }
    g.push_back(std::move(plane));
  }
  return Json{{"n", 3}, {"settings", m}, {"g", std::move(g)}, {"bound", number(ineq.bound())}};
}

FullCorrelationInequality inequality_from_json(const Json& doc) {
  const auto fail = [](const std::string& what) -> FullCorrelationInequality {
    throw std::invalid_argument("coefficient table JSON: " + what);
  };
  if (!doc.is_object()) return fail("expected an object");
  if (!doc.contains("n") || doc["n"] != 3) return fail("\"n\" must be 3");
  if (!doc.contains("settings") || !doc["settings"].is_number_integer()) {
    return fail("\"settings\" must be an integer");
  }
  if (!doc.contains("bound") || !doc["bound"].is_number()) return fail("\"bound\" must be a number");
  const int m = doc["settings"].get<int>();
  if (m < 1 || m > 16) return fail("\"settings\" must lie in 1..16");
  const auto size = static_cast<std::size_t>(m);

  const Json& g = doc.value("g", Json());
  std::vector<double> table;
  if (!g.is_array() || g.size() != size) return fail("\"g\" must be a settings^3 nested array");
  for (const auto& plane : g) {
    if (!plane.is_array() || plane.size() != size) return fail("\"g\" must be a settings^3 nested array");
    for (const auto& row : plane) {
      if (!row.is_array() || row.size() != size) return fail("\"g\" must be a settings^3 nested array");
      for (const auto& v : row) {
        if (!v.is_number()) return fail("coefficients must be numbers");
        table.push_back(v.get<double>());
      }
    }
  }
  return FullCorrelationInequality(m, std::move(table), doc["bound"].get<double>());
}

Json to_json(const DeterministicStrategy& strategy, int first_setting) {
  const auto slice = [&](const std::vector<int>& v) {
    const auto skip = std::min(v.size(), static_cast<std::size_t>(std::max(first_setting, 0)));
    return std::vector<int>(v.begin() + static_cast<std::ptrdiff_t>(skip), v.end());
  };
  return Json{{"A", slice(strategy.outputs[0])},
              {"B", slice(strategy.outputs[1])},
              {"C", slice(strategy.outputs[2])}};
}

Json to_json(const SimulationReport& r) {
  return Json{
      {"protocol", std::string(to_string(r.protocol))},
      {"shots", r.shots},
      {"successes", r.successes},
      {"p_hat", r.p_hat},
      {"stderr", r.standard_error},
      {"seed", r.seed},
      {"shards", r.shards},
      {"p_exact", r.p_exact},
      {"p_classical_exact", r.p_classical_exact},
      {"z_vs_classical", r.z_vs_classical ? Json(*r.z_vs_classical) : Json(nullptr)},
      {"wall_time_s", r.wall_time_seconds},
  };
}

Json to_json(const GapReport& r) {
  return Json{
      {"quantum", to_json(r.quantum)},
      {"p_c_exact", r.p_classical_exact.str()},
      {"p_c", r.p_classical},
      {"p_q_exact", r.p_quantum_exact},
      {"gap_exact", r.gap_exact},
      {"z_score", r.z_score},
      {"required_shots", finite_or_null(r.required_shots)},
      {"underpowered", r.underpowered},
  };
}

}  // namespace bcc
