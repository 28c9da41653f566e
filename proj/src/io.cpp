#include "campana/io.hpp"

#include <fstream>
#include <sstream>

namespace campana {

namespace {

Integer integer_field(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()), 10);
  if (v.is_string()) return parse_integer(v.get<std::string>());
  throw std::invalid_argument(where + ": expected an integer");
}

Multiplicity multiplicity_field(const nlohmann::json& v, const std::string& where) {
  if (v.is_string() && (v == "inf" || v == "infinity")) return Multiplicity::infinity();
  if (v.is_number_integer()) return Multiplicity(v.get<long>());
  throw std::invalid_argument(where + ": expected an integer >= 2 or \"inf\"");
}

}  // namespace

HyperplaneOrbifold orbifold_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("orbifold: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "n" && key != "forms" && key != "multiplicities")
      throw std::invalid_argument("orbifold: unknown field '" + key + "'");
  }
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long>() < 1)
    throw std::invalid_argument("orbifold.n: expected an integer >= 1");
  const auto n = j["n"].get<std::size_t>();
  if (!j.contains("multiplicities") || !j["multiplicities"].is_array())
    throw std::invalid_argument("orbifold.multiplicities: expected an array");
  std::vector<Multiplicity> ms;
  for (std::size_t i = 0; i < j["multiplicities"].size(); ++i)
    ms.push_back(multiplicity_field(j["multiplicities"][i], "orbifold.multiplicities[" + std::to_string(i) + "]"));
  if (!j.contains("forms")) return HyperplaneOrbifold::standard(n, std::move(ms));
  if (!j["forms"].is_array()) throw std::invalid_argument("orbifold.forms: expected an array");
  std::vector<LinearForm> forms;
  for (std::size_t i = 0; i < j["forms"].size(); ++i) {
    const auto& row = j["forms"][i];
    const std::string where = "orbifold.forms[" + std::to_string(i) + "]";
    if (!row.is_array()) throw std::invalid_argument(where + ": expected an array");
    std::vector<Integer> coeffs;
    for (std::size_t c = 0; c < row.size(); ++c) coeffs.push_back(integer_field(row[c], where));
    forms.emplace_back(std::move(coeffs));
  }
  return HyperplaneOrbifold(n, std::move(forms), std::move(ms));
}

HyperplaneOrbifold load_orbifold(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open orbifold file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("orbifold file '" + path + "': " + e.what());
  }
  return orbifold_from_json(j);
}

nlohmann::json orbifold_to_json(const HyperplaneOrbifold& orbifold) {
  nlohmann::json forms = nlohmann::json::array();
  for (const auto& f : orbifold.forms()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& c : f.coeffs()) {
      if (c.fits_slong_p())
        row.push_back(c.get_si());
      else
        row.push_back(c.get_str());
    }
    forms.push_back(row);
  }
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : orbifold.multiplicities()) {
    if (m.is_infinite())
      ms.push_back("inf");
    else
      ms.push_back(m.value());
  }
  return {{"n", orbifold.dimension()}, {"forms", forms}, {"multiplicities", ms}};
}

std::vector<Integer> parse_integer_list(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_integer(item));
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

LocalTarget parse_target(const std::string& text) {
  const auto first = text.find(':');
  const auto last = text.rfind(':');
  if (first == std::string::npos || first == last)
    throw std::invalid_argument("target '" + text + "': expected p:y0,y1,...:N");
  LocalTarget t;
  t.prime = parse_integer(text.substr(0, first));
  t.coords = parse_integer_list(text.substr(first + 1, last - first - 1));
  const Integer n = parse_integer(text.substr(last + 1));
  if (n < 1 || !n.fits_uint_p()) throw std::invalid_argument("target '" + text + "': precision must be >= 1");
  t.precision = static_cast<unsigned>(n.get_ui());
  return t;
}

nlohmann::json to_json(const ProjectivePoint& point) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : point.coords()) out.push_back(c.get_str());
  return out;
}

nlohmann::json to_json(const Valuation& v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

}  // namespace campana
