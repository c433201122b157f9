#include "lielcs/spec_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lielcs {

namespace {

using nlohmann::json;

double number_field(const json& j, const std::string& name) {
  if (!j.contains(name) || !j[name].is_number())
    throw Error(Errc::invalid_spec, "spec field '" + name + "' missing or not a number");
  return j[name].get<double>();
}

Vec2 vec2_field(const json& j, const std::string& name) {
  if (!j.contains(name) || !j[name].is_array() || j[name].size() != 2 ||
      !j[name][0].is_number() || !j[name][1].is_number())
    throw Error(Errc::invalid_spec, "spec field '" + name + "' must be a 2-vector of numbers");
  return {j[name][0].get<double>(), j[name][1].get<double>()};
}

}  // namespace

SystemSpec SystemSpec::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_spec, std::string("spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::invalid_spec, "spec root must be a JSON object");

  const Vec2 xi = vec2_field(j, "xi");
  const double a = number_field(j, "a");

  double p, q;
  if (!j.contains("A")) throw Error(Errc::invalid_spec, "spec field 'A' missing");
  const json& ja = j["A"];
  if (ja.is_object()) {
    p = number_field(ja, "p");
    q = number_field(ja, "q");
  } else if (ja.is_array() && ja.size() == 2 && ja[0].is_array() && ja[0].size() == 2 &&
             ja[1].is_array() && ja[1].size() == 2) {
    Mat2 m;
    m << ja[0][0].get<double>(), ja[0][1].get<double>(), ja[1][0].get<double>(),
        ja[1][1].get<double>();
    try {
      const RotScale pq = decompose_commuting(m);
      p = pq.p;
      q = pq.q;
    } catch (const Error&) {
      throw Error(Errc::invalid_spec, "spec field 'A' (matrix form) must satisfy AJ = JA");
    }
  } else {
    throw Error(Errc::invalid_spec, "spec field 'A' must be {p, q} or a 2x2 matrix");
  }

  if (!j.contains("Y") || !j["Y"].is_object())
    throw Error(Errc::invalid_spec, "spec field 'Y' missing or not an object");
  const json& jy = j["Y"];
  InvariantField y{number_field(jy, "alpha"), vec2_field(jy, "eta"), number_field(jy, "beta")};

  const Vec2 omega = vec2_field(j, "omega");
  if (!(omega.x() < 0.0 && 0.0 < omega.y()))
    throw Error(Errc::invalid_spec, "spec field 'omega' must satisfy omega[0] < 0 < omega[1]");

  SystemSpec spec;
  spec.system = ControlSystem(LinearField(xi, p, q, a), y, omega.x(), omega.y());
  return spec;
}

SystemSpec SystemSpec::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::invalid_spec, "cannot open spec file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return from_json_text(ss.str());
}

std::string SystemSpec::to_json_text() const {
  nlohmann::ordered_json j;
  j["xi"] = {system.X.xi.x(), system.X.xi.y()};
  j["A"] = {{"p", system.X.p}, {"q", system.X.q}};
  j["a"] = system.X.a;
  j["Y"] = {{"alpha", system.Y.alpha},
            {"eta", {system.Y.eta.x(), system.Y.eta.y()}},
            {"beta", system.Y.beta}};
  j["omega"] = {system.omega_minus, system.omega_plus};
  return j.dump(2) + "\n";
}

void SystemSpec::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::invalid_argument, "cannot open " + path + " for writing");
  f << to_json_text();
}

}  // namespace lielcs
