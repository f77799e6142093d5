#include "kgrhs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace kgrhs {

using nlohmann::json;

namespace {

class Node {
 public:
  Node(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& value() const { return value_; }

  std::string child_path(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  [[noreturn]] void fail(const std::string& message) const { throw SchemaError(path_.empty() ? "$" : path_, message); }

  void require_object() const {
    if (!value_.is_object()) fail("expected an object");
  }

  void only(const std::set<std::string>& keys) const {
    require_object();
    for (const auto& item : value_.items())
      if (!keys.count(item.key())) throw SchemaError(child_path(item.key()), "unknown field");
  }

  bool has(std::string_view key) const { return value_.contains(std::string(key)); }

  Node at(std::string_view key) const {
    if (!has(key)) throw SchemaError(child_path(key), "required field missing");
    return {value_.at(std::string(key)), child_path(key)};
  }

  std::optional<Node> get(std::string_view key) const {
    if (!has(key)) return std::nullopt;
    return Node(value_.at(std::string(key)), child_path(key));
  }

  Node index(std::size_t i) const { return {value_.at(i), path_ + "[" + std::to_string(i) + "]"}; }

  double number() const {
    if (!value_.is_number()) fail("expected a number");
    const double v = value_.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  std::string string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  std::size_t array(std::optional<std::size_t> size = std::nullopt) const {
    if (!value_.is_array()) fail("expected an array");
    if (size && value_.size() != *size) fail("expected an array of length " + std::to_string(*size));
    return value_.size();
  }

  Complex complex() const {
    if (value_.is_number()) return {number(), 0.0};
    if (value_.is_array() && value_.size() == 2) return {index(0).number(), index(1).number()};
    fail("expected a number or a [re, im] pair");
  }

  FourVector vec4() const {
    array(4);
    return {index(0).number(), index(1).number(), index(2).number(), index(3).number()};
  }

  ComplexFourVector cvec4() const {
    array(4);
    return {index(0).complex(), index(1).complex(), index(2).complex(), index(3).complex()};
  }

  std::array<double, 3> vec3() const {
    array(3);
    return {index(0).number(), index(1).number(), index(2).number()};
  }

  Quaternion quaternion() const {
    array(4);
    return Quaternion::from_components(index(0).number(), index(1).number(), index(2).number(), index(3).number());
  }

  template <typename E>
  E choice(const std::vector<std::pair<std::string_view, E>>& options) const {
    const std::string s = string();
    for (const auto& [name, e] : options)
      if (name == s) return e;
    std::string allowed;
    for (const auto& o : options) allowed += (allowed.empty() ? "" : ", ") + std::string(o.first);
    fail("expected one of: " + allowed);
  }

 private:
  const json& value_;
  std::string path_;
};

ComplexFourVector scale(const ComplexFourVector& v, double s) {
  ComplexFourVector out = v;
  for (std::size_t mu = 0; mu < 4; ++mu) out[mu] *= s;
  return out;
}

FourVector scale(const FourVector& v, double s) { return s * v; }

// Vector or {"amplitude", "exponent"} object; amplitudes are potentials, exponents wavenumbers.
PotentialField parse_field(const Node& n, const Units& u, bool complex_valued, bool allow_exponential) {
  const auto read = [&](const Node& v) { return complex_valued ? v.cvec4() : to_complex(v.vec4()); };
  if (n.value().is_object()) {
    if (!allow_exponential) n.fail("solver mode takes constant potentials only");
    n.only({"amplitude", "exponent"});
    const ComplexFourVector amp = scale(read(n.at("amplitude")), u.potential(1.0));
    ComplexFourVector exponent;
    if (const auto e = n.get("exponent")) exponent = scale(read(*e), u.wavenumber(1.0));
    return PotentialField(amp, exponent);
  }
  return PotentialField(scale(read(n), u.potential(1.0)));
}

const std::vector<std::pair<std::string_view, EnergyBranch>> kBranches{{"positive", EnergyBranch::Positive},
                                                                      {"negative", EnergyBranch::Negative}};

std::set<std::string> allowed_parameters(CaseTag tag, bool explicit_mode) {
  std::set<std::string> keys{"mode", "mass", "charge"};
  const bool quat = is_quaternionic(tag);
  if (explicit_mode) {
    keys.insert({"K", "P", "phi0"});
    if (tag != CaseTag::Usual) keys.insert("A");
    if (tag != CaseTag::Usual && tag != CaseTag::Generalized) keys.insert("B");
    if (quat) keys.insert({"A1", "phi1", "exponent_side"});
    return keys;
  }
  keys.insert("branch");
  switch (tag) {
    case CaseTag::Usual:
      keys.insert({"spatial_k", "phi0"});
      break;
    case CaseTag::Generalized:
      keys.insert({"A", "P", "phi0"});
      break;
    case CaseTag::NonHermitian:
      keys.insert({"A", "B", "phi0"});
      break;
    case CaseTag::QuatLeftFirst:
      keys.insert({"A", "B", "A1", "H0", "phi0", "phi1"});
      break;
    case CaseTag::QuatRightFirst:
      keys.insert({"A", "B", "A1", "spatial_k", "phi0", "phi1"});
      break;
    case CaseTag::QuatLeftSecond:
    case CaseTag::QuatRightSecond:
      keys.insert({"A", "B", "A1", "second_mode"});
      break;
  }
  return keys;
}

std::vector<std::string> required_parameters(CaseTag tag, bool explicit_mode) {
  if (explicit_mode) return {"mass", "K", "P"};
  switch (tag) {
    case CaseTag::Usual:
      return {"mass", "spatial_k"};
    case CaseTag::Generalized:
      return {"mass", "A", "P"};
    case CaseTag::NonHermitian:
      return {"mass", "A", "B"};
    case CaseTag::QuatRightFirst:
      return {"mass", "A", "B", "A1", "spatial_k"};
    default:
      return {"mass", "A", "B", "A1"};
  }
}

SolveRequest parse_solve(const Node& case_node, const Node& p, const Units& u) {
  SolveRequest r;
  const auto tag = parse_case(case_node.string());
  if (!tag) case_node.fail("unknown case");
  r.case_tag = *tag;
  p.require_object();
  if (const auto mode = p.get("mode"))
    r.explicit_mode = mode->choice<bool>({{"solve", false}, {"explicit", true}});
  p.only(allowed_parameters(r.case_tag, r.explicit_mode));
  for (const auto& key : required_parameters(r.case_tag, r.explicit_mode)) p.at(key);

  r.mass = u.mass(p.at("mass").number());
  if (r.mass < 0.0) p.at("mass").fail("mass must be non-negative");
  if (const auto n = p.get("charge")) r.charge = n->number();
  if (const auto n = p.get("branch")) r.branch = n->choice(kBranches);
  if (const auto n = p.get("second_mode"))
    r.second_mode = n->choice<SecondSolutionMode>(
        {{"determinant", SecondSolutionMode::Determinant}, {"simplest", SecondSolutionMode::Simplest}});
  if (const auto n = p.get("spatial_k")) {
    const auto k = n->vec3();
    r.spatial_k = {u.wavenumber(k[0]), u.wavenumber(k[1]), u.wavenumber(k[2])};
  }
  if (const auto n = p.get("A")) r.potentials.A = parse_field(*n, u, false, r.explicit_mode);
  if (const auto n = p.get("B")) r.potentials.B = parse_field(*n, u, false, r.explicit_mode);
  if (const auto n = p.get("A1")) r.potentials.A1 = parse_field(*n, u, true, r.explicit_mode);
  if (const auto n = p.get("P")) r.P = scale(n->vec4(), u.wavenumber(1.0));
  if (const auto n = p.get("K")) r.K = scale(n->vec4(), u.wavenumber(1.0));
  if (const auto n = p.get("H0")) r.H0 = scale(n->vec4(), u.potential(1.0));
  if (const auto n = p.get("phi0")) r.phi0 = n->complex();
  if (const auto n = p.get("phi1")) r.phi1 = n->complex();
  if (const auto n = p.get("exponent_side"))
    r.exponent_side = n->choice<ExponentSide>({{"left", ExponentSide::Left}, {"right", ExponentSide::Right}});
  return r;
}

KleinRequest parse_barrier(const Node& b, const Units& u) {
  b.only({"E", "V0", "V1", "mass", "charge", "phi0", "branch", "p_prime", "klein_rule", "quat", "unitary_phase",
          "points", "boundary"});
  KleinRequest r;
  BarrierSpec& s = r.spec;
  s.E = u.energy(b.at("E").number());
  s.m = u.mass(b.at("mass").number());
  if (s.m < 0.0) b.at("mass").fail("mass must be non-negative");
  if (const auto n = b.get("V0")) s.V0 = u.potential(n->number());
  if (const auto n = b.get("V1")) s.V1 = u.potential(n->number());
  if (const auto n = b.get("charge")) s.q = n->number();
  if (const auto n = b.get("phi0")) s.phi0 = n->number();
  if (const auto n = b.get("p_prime")) s.p_prime = u.wavenumber(n->number());
  if (const auto n = b.get("branch"))
    s.branch = n->choice<RegionTwoBranch>({{"auto", RegionTwoBranch::Auto},
                                           {"oscillating", RegionTwoBranch::Oscillating},
                                           {"stationary", RegionTwoBranch::Stationary},
                                           {"mixed", RegionTwoBranch::Mixed}});
  if (const auto n = b.get("klein_rule"))
    s.rule = n->choice<KleinBranchRule>(
        {{"group_velocity", KleinBranchRule::GroupVelocity}, {"opposite", KleinBranchRule::Opposite}});
  if (const auto n = b.get("quat")) {
    n->only({"a0", "a1"});
    QuaternionicBarrier qb;
    qb.a0 = Complex(s.V0, s.V1);
    if (const auto a0 = n->get("a0")) qb.a0 = u.potential(1.0) * a0->complex();
    qb.a1 = u.potential(1.0) * n->at("a1").complex();
    s.quat = qb;
  }
  if (const auto n = b.get("unitary_phase")) s.unitary_phase = n->quaternion();
  if (const auto n = b.get("points")) {
    const std::size_t count = n->array();
    for (std::size_t i = 0; i < count; ++i) r.points.push_back(n->index(i).vec4());
  }
  if (const auto n = b.get("boundary")) {
    n->only({"phi_I", "phi_II", "side"});
    BoundaryRequest br;
    br.phi_I = n->at("phi_I").quaternion();
    br.phi_II = n->at("phi_II").quaternion();
    if (const auto side = n->get("side"))
      br.side = side->choice<PhaseSide>({{"left", PhaseSide::Left}, {"right", PhaseSide::Right}});
    if (!s.unitary_phase) b.at("unitary_phase");
    r.boundary = br;
  }
  return r;
}

VerificationRequest parse_verification(const Node& v) {
  v.only({"h", "order", "points", "box", "time_range", "h_list"});
  VerificationRequest r;
  if (const auto n = v.get("h")) {
    r.stencil.h = n->number();
    if (!(r.stencil.h > 0.0)) n->fail("step must be positive");
  }
  if (const auto n = v.get("order")) {
    const double o = n->number();
    if (o != 2.0 && o != 4.0) n->fail("order must be 2 or 4");
    r.stencil.order = static_cast<int>(o);
  }
  if (const auto n = v.get("points")) {
    const double c = n->number();
    if (c < 1.0 || c != std::floor(c) || c > 1e6) n->fail("points must be a positive integer");
    r.points = static_cast<int>(c);
  }
  if (const auto n = v.get("box")) {
    n->only({"lower", "upper", "t"});
    if (const auto lo = n->get("lower")) r.box.lower = lo->vec3();
    if (const auto hi = n->get("upper")) r.box.upper = hi->vec3();
    if (const auto t = n->get("t")) r.box.t = t->number();
    for (std::size_t i = 0; i < 3; ++i)
      if (!(r.box.upper[i] > r.box.lower[i])) n->fail("upper must exceed lower on every axis");
  }
  if (const auto n = v.get("time_range")) {
    n->array(2);
    r.time_range = {n->index(0).number(), n->index(1).number()};
    if (!(r.time_range[1] >= r.time_range[0])) n->fail("time range must be ordered");
  }
  if (const auto n = v.get("h_list")) {
    const std::size_t count = n->array();
    if (count < 3) n->fail("at least three step sizes required");
    for (std::size_t i = 0; i < count; ++i) {
      const double h = n->index(i).number();
      if (!(h > 0.0)) n->index(i).fail("step must be positive");
      r.h_list.push_back(h);
    }
  }
  if (r.h_list.empty())
    r.h_list = r.stencil.order == 4 ? std::vector<double>{0.2, 0.1, 0.05, 0.025}
                                    : std::vector<double>{0.08, 0.04, 0.02, 0.01};
  return r;
}

template <typename Json>
Json* find_path(Json& document, const std::string& path) {
  Json* node = &document;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (node->is_object() && node->contains(part)) {
      node = &node->at(part);
    } else if (node->is_array() && !part.empty() && std::all_of(part.begin(), part.end(), ::isdigit) &&
               std::stoul(part) < node->size()) {
      node = &node->at(std::stoul(part));
    } else {
      return nullptr;
    }
  }
  return node;
}

SweepRequest parse_sweep(const Node& s, const json& document) {
  s.only({"parameter", "from", "to", "steps"});
  SweepRequest r;
  r.parameter = s.at("parameter").string();
  const json* target = find_path(document, r.parameter);
  if (!target || !target->is_number()) s.at("parameter").fail("must name an existing numeric field");
  r.from = s.at("from").number();
  r.to = s.at("to").number();
  const double steps = s.at("steps").number();
  if (steps < 2.0 || steps != std::floor(steps) || steps > 1e6) s.at("steps").fail("steps must be an integer >= 2");
  r.steps = static_cast<int>(steps);
  return r;
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Solve:
      return "solve";
    case Command::Verify:
      return "verify";
    case Command::Klein:
      return "klein";
    case Command::Sweep:
      return "sweep";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
  for (Command c : {Command::Solve, Command::Verify, Command::Klein, Command::Sweep})
    if (to_string(c) == name) return c;
  return std::nullopt;
}

std::optional<OutputFormat> parse_output(std::string_view name) {
  if (name == "human") return OutputFormat::Human;
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  return std::nullopt;
}

double SweepRequest::value(int index) const { return from + (to - from) * index / (steps - 1); }

Scenario parse_scenario(const json& document) {
  const Node root(document, "");
  root.only({"command", "case", "description", "units", "parameters", "barrier", "verification", "sweep", "output",
             "tolerance", "seed"});
  Scenario s;
  s.raw = document;
  if (const auto n = root.get("description")) n->string();
  if (const auto n = root.get("command")) {
    s.command = parse_command(n->string());
    if (!s.command) n->fail("expected one of: solve, verify, klein, sweep");
  }
  if (const auto n = root.get("units")) {
    n->only({"hbar", "c"});
    if (const auto h = n->get("hbar")) s.units.hbar = h->number();
    if (const auto c = n->get("c")) s.units.c = c->number();
    if (!(s.units.hbar > 0.0) || !(s.units.c > 0.0)) n->fail("hbar and c must be positive");
  }
  const bool has_case = root.has("case") || root.has("parameters");
  if (has_case && root.has("barrier")) root.fail("a scenario holds either case/parameters or barrier, not both");
  if (has_case) {
    s.solve = parse_solve(root.at("case"), root.at("parameters"), s.units);
  } else if (root.has("barrier")) {
    s.klein = parse_barrier(root.at("barrier"), s.units);
  } else {
    throw SchemaError("case", "required field missing (or provide barrier)");
  }
  if (const auto n = root.get("verification")) {
    s.verification = parse_verification(*n);
  } else {
    s.verification = parse_verification(Node(json::object(), "verification"));
  }
  if (const auto n = root.get("sweep")) s.sweep = parse_sweep(*n, document);
  if (const auto n = root.get("output")) {
    const auto o = parse_output(n->string());
    if (!o) n->fail("expected one of: human, json, csv");
    s.output = *o;
  }
  if (const auto n = root.get("tolerance")) {
    s.tolerance = n->number();
    if (!(s.tolerance > 0.0)) n->fail("tolerance must be positive");
  }
  if (const auto n = root.get("seed")) {
    if (!n->value().is_number_unsigned()) n->fail("seed must be a non-negative integer");
    s.seed = n->value().get<std::uint64_t>();
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, "cannot open scenario file");
  json document;
  try {
    document = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path, std::string("invalid JSON: ") + e.what());
  }
  return parse_scenario(document);
}

json with_parameter(const json& document, const std::string& path, double value) {
  json copy = document;
  json* target = find_path(copy, path);
  if (!target || !target->is_number()) throw SchemaError(path, "must name an existing numeric field");
  *target = value;
  return copy;
}

PlaneWaveSolution build_solution(const SolveRequest& r) {
  const FourVector A = real_part(r.potentials.A.amplitude());
  const FourVector B = real_part(r.potentials.B.amplitude());
  const ComplexFourVector A1 = r.potentials.A1.amplitude();
  if (r.explicit_mode) {
    PlaneWaveSolution s;
    s.case_tag = r.case_tag;
    s.Q = make_complex(r.P, r.K);
    s.phi0 = r.phi0;
    s.phi1 = r.phi1;
    const bool second = r.case_tag == CaseTag::QuatLeftSecond || r.case_tag == CaseTag::QuatRightSecond;
    s.exponent_side = r.exponent_side.value_or(second ? ExponentSide::Right : ExponentSide::Left);
    s.potentials = r.potentials;
    s.mass = r.mass;
    s.charge = r.charge;
    validate(s);
    return s;
  }
  switch (r.case_tag) {
    case CaseTag::Usual:
      return solve_usual(r.spatial_k, r.mass, r.branch, r.phi0);
    case CaseTag::Generalized:
      return solve_generalized(A, r.P, r.mass, r.charge, r.branch, r.phi0);
    case CaseTag::NonHermitian:
      return solve_nonhermitian(A, B, r.mass, r.charge, r.branch, r.phi0);
    case CaseTag::QuatLeftFirst:
      return solve_quat_left_first(A, B, A1, r.mass, r.charge, r.phi0, r.phi1, r.branch, r.H0);
    case CaseTag::QuatRightFirst:
      return solve_quat_right_first(A, B, A1, r.spatial_k, r.mass, r.charge, r.phi0, r.phi1, r.branch);
    case CaseTag::QuatLeftSecond:
      return solve_quat_left_second(A, B, A1, r.mass, r.charge, r.branch, r.second_mode);
    case CaseTag::QuatRightSecond:
      return solve_quat_right_second(A, B, A1, r.mass, r.charge, r.branch, r.second_mode);
  }
  throw std::logic_error("unhandled case tag");
}

}  // namespace kgrhs
