// scar/fmeb.h

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
#include <filesystem>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "scar/error.h"

namespace scar::data {

// Fake is the positive class throughout: scores are P(fake).
enum class Label : std::uint8_t { kReal = 0, kFake = 1 };
enum class Split : std::uint8_t { kTrain = 0, kDev = 1, kTest = 2 };

const char* to_string(Split split);
// Accepts "train", "dev", "test".
Split parse_split(const std::string& name);

struct EmbeddingRecord {
  std::string utterance_id;
  Label label = Label::kReal;
  Split split = Split::kTrain;
  std::vector<float> vector;
};

// Pooled representations from one foundation model. Ids are unique and
// every vector has length dim(); add() rejects anything else.
class EmbeddingSet {
 public:
  EmbeddingSet(std::string fm_name, std::uint32_t dim);

  void add(EmbeddingRecord record);

  const std::string& fm_name() const { return fm_name_; }
  std::uint32_t dim() const { return dim_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const std::vector<EmbeddingRecord>& records() const { return records_; }
  const EmbeddingRecord& operator[](std::size_t i) const { return records_[i]; }

  friend bool operator==(const EmbeddingSet& a, const EmbeddingSet& b);

 private:
  std::string fm_name_;
  std::uint32_t dim_;
  std::vector<EmbeddingRecord> records_;
  std::unordered_set<std::string> ids_;
};

bool operator==(const EmbeddingRecord& a, const EmbeddingRecord& b);

inline constexpr char kFmebMagic[4] = {'F', 'M', 'E', 'B'};
inline constexpr std::uint16_t kFmebVersion = 1;

// Little-endian FMEB layout:
//   "FMEB" | u16 version | u16 len + fm_name | u32 dim | u64 count
//   count x ( u16 len + utterance_id | u8 label | u8 split | dim x f32 )
std::vector<std::uint8_t> encode_fmeb(const EmbeddingSet& set);
EmbeddingSet decode_fmeb(std::span<const std::uint8_t> bytes);

// Exact encoded size, computed from the layout above.
std::size_t fmeb_encoded_size(const EmbeddingSet& set);

void write_fmeb(const EmbeddingSet& set, const std::filesystem::path& path);
EmbeddingSet read_fmeb(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path,
                      std::span<const std::uint8_t> bytes);

}  // namespace scar::data
