// data/pairing.cc

// Copyright 2026  The scar-efd Authors
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

#include "scar/dataset.h"

#include <algorithm>
#include <map>

namespace scar::data {

PairedDataset pair_by_utterance(const EmbeddingSet& a, const EmbeddingSet& b,
                                PairPolicy policy) {
  // std::map over std::string orders by unsigned byte value.
  std::map<std::string, const EmbeddingRecord*> by_id_b;
  for (const auto& r : b.records()) by_id_b.emplace(r.utterance_id, &r);
  std::map<std::string, const EmbeddingRecord*> by_id_a;
  for (const auto& r : a.records()) by_id_a.emplace(r.utterance_id, &r);

  if (policy == PairPolicy::kStrict) {
    std::vector<std::string> missing;
    for (const auto& [id, rec] : by_id_a) {
      if (!by_id_b.count(id)) missing.push_back(id + " (absent from " +
                                                b.fm_name() + ")");
    }
    for (const auto& [id, rec] : by_id_b) {
      if (!by_id_a.count(id)) missing.push_back(id + " (absent from " +
                                                a.fm_name() + ")");
    }
    if (!missing.empty()) {
      std::string msg = std::to_string(missing.size()) +
                        " utterance ids are not shared:";
      for (std::size_t i = 0; i < std::min<std::size_t>(10, missing.size());
           ++i) {
        msg += "\n  " + missing[i];
      }
      throw DataError(DataError::Kind::kMissingIds, msg);
    }
  }

  PairedDataset out;
  out.dim_a = a.dim();
  out.dim_b = b.dim();
  for (const auto& [id, ra] : by_id_a) {
    auto it = by_id_b.find(id);
    if (it == by_id_b.end()) continue;
    const EmbeddingRecord* rb = it->second;
    if (ra->label != rb->label || ra->split != rb->split) {
      throw DataError(DataError::Kind::kConsistency,
                      "utterance " + id + " has label/split " +
                          std::to_string(static_cast<int>(ra->label)) + "/" +
                          to_string(ra->split) + " in " + a.fm_name() +
                          " but " +
                          std::to_string(static_cast<int>(rb->label)) + "/" +
                          to_string(rb->split) + " in " + b.fm_name());
    }
    out.rows.push_back({id, ra->vector, rb->vector, ra->label, ra->split});
  }
  return out;
}

namespace {

[[noreturn]] void missing_split(Split split, const std::string& source) {
  throw DataError(DataError::Kind::kMissingSplit,
                  std::string("no ") + to_string(split) + " rows in " + source);
}

}  // namespace

Examples select_split(const EmbeddingSet& set, Split split) {
  Examples ex;
  ex.dim_a = set.dim();
  for (const auto& r : set.records()) {
    if (r.split != split) continue;
    ex.xa.insert(ex.xa.end(), r.vector.begin(), r.vector.end());
    ex.labels.push_back(static_cast<std::uint8_t>(r.label));
    ex.ids.push_back(r.utterance_id);
  }
  if (ex.labels.empty()) missing_split(split, set.fm_name());
  return ex;
}

Examples select_split(const PairedDataset& data, Split split) {
  Examples ex;
  ex.dim_a = data.dim_a;
  ex.dim_b = data.dim_b;
  for (const auto& r : data.rows) {
    if (r.split != split) continue;
    ex.xa.insert(ex.xa.end(), r.a.begin(), r.a.end());
    ex.xb.insert(ex.xb.end(), r.b.begin(), r.b.end());
    ex.labels.push_back(static_cast<std::uint8_t>(r.label));
    ex.ids.push_back(r.utterance_id);
  }
  if (ex.labels.empty()) missing_split(split, "paired dataset");
  return ex;
}

}  // namespace scar::data
