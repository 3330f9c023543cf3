// scar/dataset.h

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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scar/fmeb.h"

namespace scar::data {

struct PairedRow {
  std::string utterance_id;
  std::vector<float> a;
  std::vector<float> b;
  Label label = Label::kReal;
  Split split = Split::kTrain;
};

// Two FM extractions of the same utterances, joined by id and ordered by id
// (byte order).
struct PairedDataset {
  std::uint32_t dim_a = 0;
  std::uint32_t dim_b = 0;
  std::vector<PairedRow> rows;
};

enum class PairPolicy { kIntersect, kStrict };

// kIntersect keeps the ids present in both sets; kStrict requires equal id
// sets and lists up to 10 missing ids otherwise. A shared id whose label or
// split disagrees is always a consistency error.
PairedDataset pair_by_utterance(const EmbeddingSet& a, const EmbeddingSet& b,
                                PairPolicy policy);

// Row-major feature matrices for one split, ready for batching. Single-FM
// data leaves dim_b at 0 and xb empty.
struct Examples {
  std::uint32_t dim_a = 0;
  std::uint32_t dim_b = 0;
  std::vector<float> xa;
  std::vector<float> xb;
  std::vector<std::uint8_t> labels;
  std::vector<std::string> ids;

  std::size_t size() const { return labels.size(); }
  bool paired() const { return dim_b != 0; }
};

// Throws DataError(kMissingSplit) when the split has no rows.
Examples select_split(const EmbeddingSet& set, Split split);
Examples select_split(const PairedDataset& data, Split split);

}  // namespace scar::data
