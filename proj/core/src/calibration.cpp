#include "hsbmo/calibration.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hsbmo/io.hpp"

namespace hsbmo {

std::string Calibration::canonical_body() const {
  std::ostringstream os;
  for (const auto& [key, band] : bands)
    os << "band " << key << ' ' << format_double(band.first) << ' '
       << format_double(band.second) << '\n';
  for (const auto& [key, v] : constants) os << "const " << key << ' ' << format_double(v) << '\n';
  return os.str();
}

std::string Calibration::compute_hash() const {
  const std::string body = canonical_body();
  return hex64(fnv1a64(body.data(), body.size()));
}

bool Calibration::in_band(const std::string& key, double value) const {
  const auto& b = band(key);
  return value >= b.first && value <= b.second;
}

const std::pair<double, double>& Calibration::band(const std::string& key) const {
  auto it = bands.find(key);
  if (it == bands.end()) throw std::out_of_range("calibration band missing: " + key);
  return it->second;
}

double Calibration::constant(const std::string& key) const {
  auto it = constants.find(key);
  if (it == constants.end()) throw std::out_of_range("calibration constant missing: " + key);
  return it->second;
}

void save_calibration(const std::string& path, Calibration& c) {
  c.self_hash = c.compute_hash();
  nlohmann::json j;
  j["format"] = "hsbmo-calibration-v1";
  j["self_hash"] = c.self_hash;
  for (const auto& [key, band] : c.bands) j["bands"][key] = {band.first, band.second};
  for (const auto& [key, v] : c.constants) j["constants"][key] = v;
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os << j.dump(2) << '\n';
}

Calibration load_calibration(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open calibration file " + path);
  nlohmann::json j;
  is >> j;
  Calibration c;
  if (j.contains("bands"))
    for (auto it = j["bands"].begin(); it != j["bands"].end(); ++it)
      c.bands[it.key()] = {it.value()[0].get<double>(), it.value()[1].get<double>()};
  if (j.contains("constants"))
    for (auto it = j["constants"].begin(); it != j["constants"].end(); ++it)
      c.constants[it.key()] = it.value().get<double>();
  c.self_hash = j.value("self_hash", "");
  const std::string expects = c.compute_hash();
  if (c.self_hash != expects)
    throw IoError("calibration hash mismatch in " + path + ": stored " + c.self_hash +
                  ", computed " + expects);
  return c;
}

}  // namespace hsbmo
