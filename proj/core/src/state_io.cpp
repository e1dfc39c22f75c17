// Copyright 2026 The gaussent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gaussent/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gaussent/errors.hpp"

namespace gaussent {

namespace {

using nlohmann::json;

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j, const char* name) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError(std::string("field '") + name + "' must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

double number_field(const json& obj, const char* name) {
  if (!obj.contains(name) || !obj[name].is_number()) {
    throw InputError(std::string("missing numeric field '") + name + "'");
  }
  return obj[name].get<double>();
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::string state_to_json(const StateData& state) {
  json out;
  if (const auto* q = std::get_if<QuadCovariance>(&state)) {
    out["format"] = "quad";
    json entries = json::array();
    for (int i = 0; i < 4; ++i) {
      for (int k = 0; k < 4; ++k) entries.push_back(q->entries(i, k));
    }
    out["entries"] = entries;
  } else {
    const auto& m = std::get<ModeCovariance>(state);
    out["format"] = "mode";
    out["entries"] = {{"n1", m.n1},
                      {"n2", m.n2},
                      {"m1", complex_to_json(m.m1)},
                      {"m2", complex_to_json(m.m2)},
                      {"ms", complex_to_json(m.ms)},
                      {"mc", complex_to_json(m.mc)}};
  }
  return out.dump(2);
}

StateData state_from_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_object() || !doc.contains("format") || !doc["format"].is_string()) {
    throw InputError("state file needs a string 'format' field");
  }
  if (!doc.contains("entries")) throw InputError("state file needs an 'entries' field");
  const std::string format = doc["format"].get<std::string>();
  const json& entries = doc["entries"];
  if (format == "quad") {
    if (!entries.is_array() || entries.size() != 16) {
      throw InputError("quad entries must be 16 numbers in row-major order");
    }
    Mat4 m;
    for (int i = 0; i < 16; ++i) {
      if (!entries[static_cast<std::size_t>(i)].is_number()) {
        throw InputError("quad entries must be numbers");
      }
      m(i / 4, i % 4) = entries[static_cast<std::size_t>(i)].get<double>();
    }
    return QuadCovariance(m);
  }
  if (format == "mode") {
    if (!entries.is_object()) throw InputError("mode entries must be an object");
    ModeCovariance v;
    v.n1 = number_field(entries, "n1");
    v.n2 = number_field(entries, "n2");
    for (const auto& [name, field] : {std::pair{"m1", &v.m1}, std::pair{"m2", &v.m2},
                                      std::pair{"ms", &v.ms}, std::pair{"mc", &v.mc}}) {
      if (!entries.contains(name)) throw InputError(std::string("missing field '") + name + "'");
      *field = complex_from_json(entries[name], name);
    }
    return v;
  }
  throw InputError("unknown state format '" + format + "'");
}

StateData load_state(const std::filesystem::path& path) { return state_from_json(read_file(path)); }

void save_state(const std::filesystem::path& path, const StateData& state) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << state_to_json(state) << '\n';
}

QuadCovariance to_quad(const StateData& state) {
  if (const auto* q = std::get_if<QuadCovariance>(&state)) return *q;
  return mode_to_quad(std::get<ModeCovariance>(state));
}

ModeCovariance to_mode(const StateData& state) {
  if (const auto* m = std::get_if<ModeCovariance>(&state)) return *m;
  return quad_to_mode(std::get<QuadCovariance>(state));
}

std::string transcript_to_json(const Transcript& t) {
  json records = json::array();
  for (const auto& r : t.records) {
    json rec = {{"theta", r.setting.theta},
                {"phi", r.setting.phi},
                {"observable", r.observable == Observable::kN ? "N" : "J"},
                {"value", r.value}};
    if (r.std_error) rec["stderr"] = *r.std_error;
    if (r.cov_with_n) rec["cov_nj"] = *r.cov_with_n;
    records.push_back(rec);
  }
  return json{{"format", "transcript"}, {"records", records}}.dump(2);
}

Transcript transcript_from_json(const std::string& text) {
  const json doc = parse(text);
  const json* records = &doc;
  if (doc.is_object()) {
    if (!doc.contains("records")) throw InputError("transcript needs a 'records' field");
    records = &doc["records"];
  }
  if (!records->is_array()) throw InputError("transcript records must be an array");
  Transcript t;
  for (const auto& rec : *records) {
    TranscriptRecord r;
    r.setting = {number_field(rec, "theta"), number_field(rec, "phi")};
    if (!rec.contains("observable") || !rec["observable"].is_string()) {
      throw InputError("transcript record needs 'observable'");
    }
    const std::string obs = rec["observable"].get<std::string>();
    if (obs == "N") {
      r.observable = Observable::kN;
    } else if (obs == "J") {
      r.observable = Observable::kJ;
    } else {
      throw InputError("observable must be \"N\" or \"J\", got '" + obs + "'");
    }
    r.value = number_field(rec, "value");
    if (rec.contains("stderr")) r.std_error = number_field(rec, "stderr");
    if (rec.contains("cov_nj")) r.cov_with_n = number_field(rec, "cov_nj");
    t.records.push_back(r);
  }
  return t;
}

}  // namespace gaussent
