// SPDX-License-Identifier: Apache-2.0
//
// JSON (de)serialization for the replayable records and reports.

#pragma once

#include <json.hpp>

#include "demonwork/counts.hpp"
#include "demonwork/tomography.hpp"
#include "demonwork/witness.hpp"

namespace demonwork {

using json = nlohmann::ordered_json;

inline json to_json(const CountRecord& rec) {
  return json{{"settings_rad", rec.settings_rad},
              {"counts", rec.counts},
              {"duration_s", rec.duration_s},
              {"rate_hz", rec.rate_hz},
              {"seed", rec.seed}};
}

inline CountRecord count_record_from_json(const json& j) {
  CountRecord rec;
  rec.settings_rad = j.at("settings_rad").get<std::vector<double>>();
  rec.counts = j.at("counts").get<std::vector<std::int64_t>>();
  rec.duration_s = j.at("duration_s").get<double>();
  rec.rate_hz = j.at("rate_hz").get<double>();
  rec.seed = j.at("seed").get<std::uint64_t>();
  for (auto c : rec.counts) {
    if (c < 0) fail("CountRecord: negative count");
  }
  return rec;
}

inline json to_json(const TomographyRecord& rec) {
  return json{{"qubits", rec.n},
              {"settings", rec.settings},
              {"counts", rec.counts},
              {"duration_s", rec.duration_s},
              {"rate_hz", rec.rate_hz},
              {"seed", rec.seed}};
}

inline TomographyRecord tomography_record_from_json(const json& j) {
  TomographyRecord rec;
  rec.n = j.at("qubits").get<int>();
  rec.settings = j.at("settings").get<std::vector<std::string>>();
  rec.counts = j.at("counts").get<std::vector<std::vector<double>>>();
  rec.duration_s = j.at("duration_s").get<double>();
  rec.rate_hz = j.at("rate_hz").get<double>();
  rec.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& row : rec.counts) {
    for (double c : row) {
      if (c < 0.0) fail("TomographyRecord: negative count");
    }
  }
  return rec;
}

inline json to_json(const WitnessReport& rep) {
  json j{{"value", rep.value},
         {"threshold", rep.threshold},
         {"violated", rep.violated}};
  if (rep.sigma) {
    j["sigma"] = *rep.sigma;
  } else {
    j["sigma"] = nullptr;
  }
  return j;
}

}  // namespace demonwork
