#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cornerlab/grid_set.hpp"

namespace cornerlab {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest 17-significant-digit form; round-trips any double exactly.
inline std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct ConstructionBlock {
  double r = 0.0;
  double delta = 0.0;
  double delta_coeff = 0.0;
  std::vector<double> theta;
  std::vector<std::pair<double, double>> mu;
  std::uint64_t seed = 0;
  int mu_trials = 0;

  friend bool operator==(const ConstructionBlock&, const ConstructionBlock&) = default;
};

struct BaselineBlock {
  std::string kind;
  std::int64_t m = 0;
  std::int64_t shift = 0;

  friend bool operator==(const BaselineBlock&, const BaselineBlock&) = default;
};

// On-disk set representation ("cornerfree-set-v1"): grid side, dimension,
// exactly one provenance block, and the sorted point list. Serialization is
// canonical (fixed key order, %.17g floats), so identical sets produce
// identical bytes.
struct SetFile {
  static constexpr const char* kFormatTag = "cornerfree-set-v1";

  int n = 0;
  int d = 0;
  std::optional<ConstructionBlock> construction;
  std::optional<BaselineBlock> baseline;
  std::vector<std::pair<int, int>> points;

  friend bool operator==(const SetFile&, const SetFile&) = default;

  void validate() const {
    if (n < 1 || n > GridSet::kMaxSide) throw ParseError("set file: n out of range");
    if (d < 0) throw ParseError("set file: d must be nonnegative");
    if (construction.has_value() == baseline.has_value())
      throw ParseError("set file: exactly one of construction/baseline required");
    if (construction) {
      const auto& c = *construction;
      if (d < 1) throw ParseError("set file: construction requires d >= 1");
      if (static_cast<int>(c.theta.size()) != d || static_cast<int>(c.mu.size()) != d)
        throw ParseError("set file: theta/mu length must equal d");
      if (!(c.r > 0.0) || !(c.delta > 0.0))
        throw ParseError("set file: r and delta must be positive");
      if (c.mu_trials < 1) throw ParseError("set file: mu_trials must be positive");
    }
    if (baseline && baseline->kind != "behrend-diagonal")
      throw ParseError("set file: unknown baseline kind");
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& [x, y] = points[i];
      if (x < 1 || x > n || y < 1 || y > n)
        throw ParseError("set file: point " + std::to_string(i) + " outside grid");
      if (i > 0 && points[i] <= points[i - 1])
        throw ParseError("set file: points not sorted/deduplicated at index " + std::to_string(i));
    }
  }

  GridSet to_grid() const {
    GridSet g(n);
    for (const auto& [x, y] : points) g.add(x, y);
    return g;
  }

  std::string serialize() const {
    std::ostringstream out;
    out << "{\n";
    out << "  \"format\": \"" << kFormatTag << "\",\n";
    out << "  \"n\": " << n << ",\n";
    out << "  \"d\": " << d << ",\n";
    if (construction) {
      const auto& c = *construction;
      out << "  \"construction\": {\n";
      out << "    \"r\": " << fmt17(c.r) << ",\n";
      out << "    \"delta\": " << fmt17(c.delta) << ",\n";
      out << "    \"delta_coeff\": " << fmt17(c.delta_coeff) << ",\n";
      out << "    \"theta\": [";
      for (std::size_t i = 0; i < c.theta.size(); ++i)
        out << (i ? ", " : "") << fmt17(c.theta[i]);
      out << "],\n";
      out << "    \"mu\": [";
      for (std::size_t i = 0; i < c.mu.size(); ++i)
        out << (i ? ", " : "") << "[" << fmt17(c.mu[i].first) << ", " << fmt17(c.mu[i].second)
            << "]";
      out << "],\n";
      out << "    \"seed\": " << c.seed << ",\n";
      out << "    \"mu_trials\": " << c.mu_trials << "\n";
      out << "  },\n";
    }
    if (baseline) {
      out << "  \"baseline\": {\n";
      out << "    \"kind\": \"" << baseline->kind << "\",\n";
      out << "    \"m\": " << baseline->m << ",\n";
      out << "    \"shift\": " << baseline->shift << "\n";
      out << "  },\n";
    }
    out << "  \"points\": [";
    for (std::size_t i = 0; i < points.size(); ++i) {
      out << (i ? ",\n    " : "\n    ");
      out << "[" << points[i].first << ", " << points[i].second << "]";
    }
    out << (points.empty() ? "]\n" : "\n  ]\n");
    out << "}\n";
    return out.str();
  }

  static SetFile parse(const std::string& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("set file: ") + e.what());
    }
    SetFile out;
    try {
      if (j.at("format").get<std::string>() != kFormatTag)
        throw ParseError("set file: unknown format tag");
      out.n = j.at("n").get<int>();
      out.d = j.at("d").get<int>();
      if (j.contains("construction")) {
        const auto& jc = j.at("construction");
        ConstructionBlock c;
        c.r = jc.at("r").get<double>();
        c.delta = jc.at("delta").get<double>();
        c.delta_coeff = jc.at("delta_coeff").get<double>();
        c.theta = jc.at("theta").get<std::vector<double>>();
        for (const auto& pair : jc.at("mu")) {
          if (!pair.is_array() || pair.size() != 2)
            throw ParseError("set file: mu entries must be pairs");
          c.mu.emplace_back(pair[0].get<double>(), pair[1].get<double>());
        }
        c.seed = jc.at("seed").get<std::uint64_t>();
        c.mu_trials = jc.at("mu_trials").get<int>();
        out.construction = std::move(c);
      }
      if (j.contains("baseline")) {
        const auto& jb = j.at("baseline");
        BaselineBlock b;
        b.kind = jb.at("kind").get<std::string>();
        b.m = jb.at("m").get<std::int64_t>();
        b.shift = jb.at("shift").get<std::int64_t>();
        out.baseline = std::move(b);
      }
      for (const auto& pt : j.at("points")) {
        if (!pt.is_array() || pt.size() != 2)
          throw ParseError("set file: points must be [x, y] pairs");
        out.points.emplace_back(pt[0].get<int>(), pt[1].get<int>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("set file: ") + e.what());
    }
    out.validate();
    return out;
  }
};

}  // namespace cornerlab
