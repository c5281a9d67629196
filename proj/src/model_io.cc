// src/model_io.cc

// Copyright 2026  The MUD Front-End Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mud/model_io.h"

#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace mud {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json CdfToJson(const EmpiricalCdf &cdf) {
  return ordered_json{{"cdf_knots_x", cdf.knots_x}, {"cdf_knots_u", cdf.knots_u}};
}

ordered_json ChannelToJson(const ChannelNonlinearity &channel) {
  ordered_json j;
  j["kind"] = KindName(KindOf(channel));
  if (auto *p = std::get_if<LogMelParams>(&channel)) {
    j["floor"] = p->floor;
  } else if (auto *p = std::get_if<FixedPowerParams>(&channel)) {
    j["exponent"] = p->exponent;
  } else if (auto *p = std::get_if<PowerMudParams>(&channel)) {
    j["alpha"] = p->alpha;
    j["x_min"] = p->x_min;
    j["x_max"] = p->x_max;
    j["delta"] = p->delta;
  } else if (auto *p = std::get_if<HistogramMudParams>(&channel)) {
    j.update(CdfToJson(p->cdf));
  } else if (auto *p = std::get_if<HistogramGaussParams>(&channel)) {
    j.update(CdfToJson(p->cdf));
  }
  return j;
}

// Field access that turns nlohmann's type errors into schema errors naming
// the field.
template <typename T>
T Field(const json &obj, const char *key, const std::string &where) {
  if (!obj.is_object() || !obj.contains(key))
    throw SchemaError(where + ": missing field '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception &) {
    throw SchemaError(where + ": field '" + key + "' has the wrong type");
  }
}

void ExpectOnly(const json &obj, std::initializer_list<const char *> keys,
                const std::string &where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char *k : keys) known = known || it.key() == k;
    if (!known)
      throw SchemaError(where + ": unexpected field '" + it.key() + "'");
  }
}

EmpiricalCdf CdfFromJson(const json &j, const std::string &where) {
  EmpiricalCdf cdf;
  cdf.knots_x = Field<std::vector<double>>(j, "cdf_knots_x", where);
  cdf.knots_u = Field<std::vector<double>>(j, "cdf_knots_u", where);
  return cdf;
}

ChannelNonlinearity ChannelFromJson(const json &j, std::size_t index) {
  const std::string where = "channel " + std::to_string(index);
  if (!j.is_object()) throw SchemaError(where + ": not an object");
  const auto kind_name = Field<std::string>(j, "kind", where);
  NonlinearityKind kind;
  try {
    kind = ParseKindName(kind_name);
  } catch (const SchemaError &e) {
    throw SchemaError(where + ": " + e.what());
  }
  switch (kind) {
    case NonlinearityKind::kLog:
      ExpectOnly(j, {"kind", "floor"}, where);
      return LogMelParams{Field<double>(j, "floor", where)};
    case NonlinearityKind::kFixedPower:
      ExpectOnly(j, {"kind", "exponent"}, where);
      return FixedPowerParams{Field<double>(j, "exponent", where)};
    case NonlinearityKind::kPowerMud:
      ExpectOnly(j, {"kind", "alpha", "x_min", "x_max", "delta"}, where);
      return PowerMudParams{
          Field<double>(j, "alpha", where), Field<double>(j, "x_min", where),
          Field<double>(j, "x_max", where), Field<double>(j, "delta", where)};
    case NonlinearityKind::kHistogramMud:
      ExpectOnly(j, {"kind", "cdf_knots_x", "cdf_knots_u"}, where);
      return HistogramMudParams{CdfFromJson(j, where)};
    case NonlinearityKind::kHistogramGauss:
      ExpectOnly(j, {"kind", "cdf_knots_x", "cdf_knots_u"}, where);
      return HistogramGaussParams{CdfFromJson(j, where)};
  }
  throw SchemaError(where + ": unhandled kind");
}

}  // namespace

std::string ModelToJson(const NonlinearityModel &model) {
  const FrontendConfig &f = model.frontend;
  ordered_json j;
  j["format_version"] = kModelFormatVersion;
  j["frontend"] = {
      {"sample_rate_hz", f.sample_rate_hz},
      {"frame_ms", f.frame_ms},
      {"hop_ms", f.hop_ms},
      {"window", WindowKindName(f.window)},
      {"fft_size", f.fft_size},
      {"num_channels", f.num_channels},
      {"f_min_hz", f.f_min_hz},
      {"f_max_hz", f.f_max_hz},
      {"mfcc_order", f.mfcc_order},
      {"vad",
       {{"enabled", f.vad_enabled},
        {"range_db", f.vad_range_db},
        {"floor_db", f.vad_floor_db}}},
  };
  const Provenance &p = model.provenance;
  j["provenance"] = {
      {"method", p.method},         {"utterance_count", p.utterance_count},
      {"corpus_size", p.corpus_size}, {"sample_n", p.sample_n},
      {"seed", p.seed},             {"frame_count", p.frame_count},
  };
  ordered_json channels = ordered_json::array();
  for (const auto &ch : model.channels) channels.push_back(ChannelToJson(ch));
  j["channels"] = std::move(channels);
  return j.dump(1) + "\n";
}

NonlinearityModel ModelFromJson(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw FormatError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("model: top level must be an object");
  const int version = Field<int>(j, "format_version", "model");
  if (version != kModelFormatVersion)
    throw SchemaError("model: unsupported format_version " +
                      std::to_string(version) + " (expected " +
                      std::to_string(kModelFormatVersion) + ")");

  NonlinearityModel model;
  const json &fj = j.contains("frontend") ? j.at("frontend") : json();
  const std::string fw = "frontend";
  FrontendConfig &f = model.frontend;
  f.sample_rate_hz = Field<int>(fj, "sample_rate_hz", fw);
  f.frame_ms = Field<double>(fj, "frame_ms", fw);
  f.hop_ms = Field<double>(fj, "hop_ms", fw);
  try {
    f.window = ParseWindowKind(Field<std::string>(fj, "window", fw));
  } catch (const SchemaError &) {
    throw;
  } catch (const Error &e) {
    throw SchemaError(fw + ": " + e.what());
  }
  f.fft_size = Field<int>(fj, "fft_size", fw);
  f.num_channels = Field<int>(fj, "num_channels", fw);
  f.f_min_hz = Field<double>(fj, "f_min_hz", fw);
  f.f_max_hz = Field<double>(fj, "f_max_hz", fw);
  f.mfcc_order = Field<int>(fj, "mfcc_order", fw);
  const json &vj = fj.contains("vad") ? fj.at("vad") : json();
  f.vad_enabled = Field<bool>(vj, "enabled", "frontend.vad");
  f.vad_range_db = Field<double>(vj, "range_db", "frontend.vad");
  f.vad_floor_db = Field<double>(vj, "floor_db", "frontend.vad");
  try {
    f.Validate();
  } catch (const Error &e) {
    throw SchemaError(fw + ": " + e.what());
  }

  const json &pj = j.contains("provenance") ? j.at("provenance") : json();
  const std::string pw = "provenance";
  Provenance &p = model.provenance;
  p.method = Field<std::string>(pj, "method", pw);
  p.utterance_count = Field<std::int64_t>(pj, "utterance_count", pw);
  p.corpus_size = Field<std::int64_t>(pj, "corpus_size", pw);
  p.sample_n = Field<std::int64_t>(pj, "sample_n", pw);
  p.seed = Field<std::uint64_t>(pj, "seed", pw);
  p.frame_count = Field<std::int64_t>(pj, "frame_count", pw);

  if (!j.contains("channels") || !j.at("channels").is_array())
    throw SchemaError("model: 'channels' must be an array");
  const json &cj = j.at("channels");
  model.channels.reserve(cj.size());
  for (std::size_t i = 0; i < cj.size(); ++i)
    model.channels.push_back(ChannelFromJson(cj[i], i));

  model.Validate();
  return model;
}

void SaveModel(const NonlinearityModel &model,
               const std::filesystem::path &path) {
  const std::string text = ModelToJson(model);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(tmp.string() + ": cannot open for writing");
    out << text;
    if (!out) throw Error(tmp.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

NonlinearityModel LoadModel(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path.string() + ": cannot open model file");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    return ModelFromJson(text);
  } catch (const SchemaError &e) {
    throw SchemaError(path.string() + ": " + e.what());
  } catch (const FormatError &e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace mud
