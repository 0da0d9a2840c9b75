// Copyright 2026 The kdiff Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kd/io.hpp"

#include <cstdio>
#include <sstream>

#include "kd/error.hpp"

namespace kd::io {
namespace {

using nlohmann::json;

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json header(const char* schema) { return json{{"schema", schema}, {"version", kSchemaVersion}}; }

void expect_schema(const json& doc, const char* schema) {
  if (!doc.is_object() || doc.value("schema", "") != schema) {
    throw DomainError(std::string("expected a '") + schema + "' document");
  }
  if (doc.value("version", 0) != kSchemaVersion) {
    throw DomainError(std::string("unsupported '") + schema + "' version");
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string pattern_csv(const DiffractionPattern& pattern, WaveVector k_ref) {
  std::string out = "n,m,momentum_transfer_per_kL,probability\n";
  for (const auto& o : pattern.orders) {
    out += std::to_string(o.n) + "," + std::to_string(o.m) + "," + format_double(o.momentum_transfer / k_ref) +
           "," + format_double(o.probability) + "\n";
  }
  return out;
}

json pattern_to_json(const DiffractionPattern& pattern, WaveVector k_ref) {
  json doc = header("kdiff.pattern");
  doc["truncation"] = pattern.truncation;
  doc["tail_bound"] = pattern.tail_bound;
  doc["merged"] = pattern.merged;
  doc["k_ref_per_m"] = k_ref.si();
  json orders = json::array();
  for (const auto& o : pattern.orders) {
    orders.push_back({{"n", o.n},
                      {"m", o.m},
                      {"momentum_transfer_per_m", o.momentum_transfer.si()},
                      {"momentum_transfer_per_kL", o.momentum_transfer / k_ref},
                      {"probability", o.probability},
                      {"multiplicity", o.multiplicity}});
  }
  doc["orders"] = std::move(orders);
  return doc;
}

DiffractionPattern pattern_from_json(const json& doc) {
  expect_schema(doc, "kdiff.pattern");
  DiffractionPattern p;
  p.truncation = doc.at("truncation").get<int>();
  p.tail_bound = doc.at("tail_bound").get<double>();
  p.merged = doc.at("merged").get<bool>();
  for (const auto& o : doc.at("orders")) {
    p.orders.push_back({o.at("n").get<int>(), o.at("m").get<int>(),
                        WaveVector{o.at("momentum_transfer_per_m").get<double>()}, o.at("probability").get<double>(),
                        o.at("multiplicity").get<int>()});
  }
  return p;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "w,label,probability\n";
  for (const auto& r : rows) out += format_double(r.w) + "," + r.label + "," + format_double(r.probability) + "\n";
  return out;
}

json sweep_to_json(const std::vector<SweepRow>& rows) {
  json doc = header("kdiff.sweep");
  json arr = json::array();
  for (const auto& r : rows) arr.push_back({{"w", r.w}, {"label", r.label}, {"probability", r.probability}});
  doc["rows"] = std::move(arr);
  return doc;
}

std::vector<SweepRow> sweep_from_json(const json& doc) {
  expect_schema(doc, "kdiff.sweep");
  std::vector<SweepRow> rows;
  for (const auto& r : doc.at("rows")) {
    rows.push_back({r.at("w").get<double>(), r.at("label").get<std::string>(), r.at("probability").get<double>()});
  }
  return rows;
}

std::string bragg_csv(const BraggResult& r) {
  std::string out = "p_transmit,p_scatter,resonant_mode,detuned\n";
  out += format_double(r.p_transmit) + "," + format_double(r.p_scatter) + "," +
         (r.resonant_mode ? std::to_string(*r.resonant_mode) : std::string()) + "," +
         (r.detuned ? "true" : "false") + "\n";
  return out;
}

json bragg_to_json(const BraggResult& r) {
  json doc = header("kdiff.bragg");
  doc["p_transmit"] = r.p_transmit;
  doc["p_scatter"] = r.p_scatter;
  doc["resonant_mode"] = r.resonant_mode ? json(*r.resonant_mode) : json(nullptr);
  doc["detuned"] = r.detuned;
  return doc;
}

std::string regime_csv(const RegimeReport& r, const RegimeThresholds& t) {
  std::string out = "check,value,threshold,pass\n";
  const auto b = [](bool v) { return v ? "true" : "false"; };
  out += "adiabatic_margin," + format_double(r.adiabatic_margin) + ",1," + b(r.adiabatic) + "\n";
  out += "emission_ratio," + format_double(r.emission_ratio) + "," + format_double(t.emission_ratio) + "," +
         b(r.low_emission) + "\n";
  out += "w," + format_double(r.w) + "," + csv_quote(format_double(t.w_min) + ".." + format_double(t.w_max)) +
         "," + b(r.depth_ok) + "\n";
  if (r.intensity_estimate) out += "intensity_W_m2," + format_double(r.intensity_estimate->si()) + ",,\n";
  for (const auto& note : r.notes) out += "note," + csv_quote(note) + ",,\n";
  return out;
}

json regime_to_json(const RegimeReport& r, const RegimeThresholds& t) {
  json doc = header("kdiff.feasibility");
  doc["adiabatic"] = {{"pass", r.adiabatic}, {"margin", r.adiabatic_margin}};
  doc["low_emission"] = {{"pass", r.low_emission}, {"ratio", r.emission_ratio}, {"threshold", t.emission_ratio}};
  doc["depth"] = {{"pass", r.depth_ok}, {"w", r.w}, {"w_min", t.w_min}, {"w_max", t.w_max}};
  doc["intensity_W_m2"] = r.intensity_estimate ? json(r.intensity_estimate->si()) : json(nullptr);
  doc["all_pass"] = r.all_pass();
  doc["notes"] = r.notes;
  return doc;
}

std::string propagation_csv(const std::vector<PropagationRow>& rows, double off_ladder) {
  std::string out = "order,momentum_transfer_per_kL,population,raman_nath\n";
  for (const auto& r : rows) {
    out += r.order + "," + format_double(r.momentum_transfer_per_kl) + "," + format_double(r.population) + "," +
           format_double(r.raman_nath) + "\n";
  }
  out += "off_ladder,," + format_double(off_ladder) + ",\n";
  return out;
}

json propagation_to_json(const std::vector<PropagationRow>& rows, double off_ladder, double norm) {
  json doc = header("kdiff.propagate");
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"order", r.order},
                   {"momentum_transfer_per_kL", r.momentum_transfer_per_kl},
                   {"population", r.population},
                   {"raman_nath", r.raman_nath}});
  }
  doc["ladder"] = std::move(arr);
  doc["off_ladder"] = off_ladder;
  doc["norm"] = norm;
  return doc;
}

std::string density_csv(const WavefunctionGrid& grid, Length period) {
  std::string out = "x_per_period,density\n";
  const auto psi = grid.amplitudes();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += format_double(grid.position(i) / period) + "," + format_double(std::norm(psi[i])) + "\n";
  }
  return out;
}

}  // namespace kd::io
