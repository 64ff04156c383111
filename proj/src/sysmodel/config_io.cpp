#include "rissec/config_io.hpp"

#include "rissec/errors.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <set>

namespace rissec {

namespace {

using nlohmann::json;

json direction_json(const Direction& d) { return {{"azimuth", d.azimuth}, {"elevation", d.elevation}}; }

double read_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key + " must be a number");
  return v.get<double>();
}

int read_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key + " must be an integer");
  return v.get<int>();
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& item : obj.items())
    if (!known.count(item.key())) throw ConfigError("unknown key: " + where + item.key());
}

Direction read_direction(const json& v, const std::string& key, Direction d) {
  reject_unknown(v, {"azimuth", "elevation"}, "angles." + key + ".");
  if (v.contains("azimuth")) d.azimuth = read_number(v["azimuth"], key + ".azimuth");
  if (v.contains("elevation")) d.elevation = read_number(v["elevation"], key + ".elevation");
  return d;
}

}  // namespace

json to_json(const SystemConfig& c) {
  json j;
  j["K"] = c.K;
  j["N"] = c.N;
  j["epsilon"] = c.epsilon;
  j["epsilon1"] = c.epsilon1 ? json(*c.epsilon1) : json(nullptr);
  j["alpha1"] = c.alpha1;
  j["alpha2"] = c.alpha2;
  j["beta0"] = c.beta0;
  j["d_SR"] = c.d_SR;
  j["d_RD"] = c.d_RD;
  j["r_e"] = c.r_e;
  j["lambda_e"] = c.lambda_e;
  j["rho_d_dB"] = c.rho_d_dB;
  j["rho_e_dB"] = c.rho_e_dB;
  j["C_th"] = c.C_th;
  j["element_spacing_ratio"] = c.element_spacing_ratio;
  j["angles"] = {{"bs_departure", direction_json(c.bs_departure)},
                 {"ris_arrival", direction_json(c.ris_arrival)},
                 {"user", direction_json(c.user)},
                 {"eve_reference", direction_json(c.eve_reference)}};
  j["eve_angle_mode"] = c.eve_angle_mode == EveAngleMode::reference ? "reference" : "geometric";
  j["h_RIS"] = c.h_RIS;
  return j;
}

SystemConfig config_from_json(const json& doc) {
  reject_unknown(doc,
                 {"K", "N", "epsilon", "epsilon1", "alpha1", "alpha2", "beta0", "d_SR", "d_RD", "r_e",
                  "lambda_e", "rho_d_dB", "rho_e_dB", "C_th", "element_spacing_ratio", "angles",
                  "eve_angle_mode", "h_RIS"},
                 "");
  SystemConfig c;
  auto num = [&](const char* key, double& field) {
    if (doc.contains(key)) field = read_number(doc[key], key);
  };
  if (doc.contains("K")) c.K = read_int(doc["K"], "K");
  if (doc.contains("N")) c.N = read_int(doc["N"], "N");
  num("epsilon", c.epsilon);
  if (doc.contains("epsilon1") && !doc["epsilon1"].is_null())
    c.epsilon1 = read_number(doc["epsilon1"], "epsilon1");
  num("alpha1", c.alpha1);
  num("alpha2", c.alpha2);
  num("beta0", c.beta0);
  num("d_SR", c.d_SR);
  num("d_RD", c.d_RD);
  num("r_e", c.r_e);
  num("lambda_e", c.lambda_e);
  num("rho_d_dB", c.rho_d_dB);
  num("rho_e_dB", c.rho_e_dB);
  num("C_th", c.C_th);
  num("element_spacing_ratio", c.element_spacing_ratio);
  num("h_RIS", c.h_RIS);
  if (doc.contains("angles")) {
    const auto& a = doc["angles"];
    reject_unknown(a, {"bs_departure", "ris_arrival", "user", "eve_reference"}, "angles.");
    if (a.contains("bs_departure")) c.bs_departure = read_direction(a["bs_departure"], "bs_departure", c.bs_departure);
    if (a.contains("ris_arrival")) c.ris_arrival = read_direction(a["ris_arrival"], "ris_arrival", c.ris_arrival);
    if (a.contains("user")) c.user = read_direction(a["user"], "user", c.user);
    if (a.contains("eve_reference"))
      c.eve_reference = read_direction(a["eve_reference"], "eve_reference", c.eve_reference);
  }
  if (doc.contains("eve_angle_mode")) {
    const auto& m = doc["eve_angle_mode"];
    if (m == "reference")
      c.eve_angle_mode = EveAngleMode::reference;
    else if (m == "geometric")
      c.eve_angle_mode = EveAngleMode::geometric;
    else
      throw ConfigError("eve_angle_mode must be \"reference\" or \"geometric\"");
  }
  validate(c);
  return c;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(doc);
}

std::string normalized_json(const SystemConfig& cfg) { return to_json(cfg).dump(); }

std::string config_sha256(const SystemConfig& cfg) {
  const std::string text = normalized_json(cfg);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace rissec
