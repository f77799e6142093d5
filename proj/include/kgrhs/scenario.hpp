#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgrhs/klein.hpp"
#include "kgrhs/observables.hpp"
#include "kgrhs/planewave.hpp"
#include "kgrhs/units.hpp"
#include "kgrhs/verifier.hpp"

namespace kgrhs {

class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class Command { Solve, Verify, Klein, Sweep };
enum class OutputFormat { Human, Json, Csv };

std::string_view to_string(Command command);
std::optional<Command> parse_command(std::string_view name);
std::optional<OutputFormat> parse_output(std::string_view name);

struct SolveRequest {
  CaseTag case_tag = CaseTag::Usual;
  bool explicit_mode = false;
  double mass = 0.0;
  double charge = 1.0;
  EnergyBranch branch = EnergyBranch::Positive;
  SecondSolutionMode second_mode = SecondSolutionMode::Determinant;
  std::array<double, 3> spatial_k{};
  PotentialBundle potentials;
  FourVector P, K;
  std::optional<FourVector> H0;
  Complex phi0{1.0, 0.0};
  Complex phi1{};
  std::optional<ExponentSide> exponent_side;
};

struct BoundaryRequest {
  Quaternion phi_I;
  Quaternion phi_II;
  PhaseSide side = PhaseSide::Right;
};

struct KleinRequest {
  BarrierSpec spec;
  std::vector<FourVector> points;
  std::optional<BoundaryRequest> boundary;
};

struct VerificationRequest {
  StencilSpec stencil;
  int points = 10;
  Box box;
  std::array<double, 2> time_range{-1.0, 1.0};
  std::vector<double> h_list;
};

struct SweepRequest {
  std::string parameter;
  double from = 0.0;
  double to = 0.0;
  int steps = 2;

  double value(int index) const;
};

struct Scenario {
  std::optional<Command> command;
  Units units;
  std::optional<SolveRequest> solve;
  std::optional<KleinRequest> klein;
  VerificationRequest verification;
  std::optional<SweepRequest> sweep;
  OutputFormat output = OutputFormat::Human;
  double tolerance = 1e-5;
  std::uint64_t seed = 0;
  nlohmann::json raw;
};

// Validates against the scenario schema; throws SchemaError with the offending field path.
Scenario parse_scenario(const nlohmann::json& document);
Scenario load_scenario(const std::string& path);

// Copy of the document with the numeric field at a dotted path replaced.
nlohmann::json with_parameter(const nlohmann::json& document, const std::string& path, double value);

PlaneWaveSolution build_solution(const SolveRequest& request);

}  // namespace kgrhs
