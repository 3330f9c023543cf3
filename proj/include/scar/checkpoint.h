// scar/checkpoint.h

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
#include <vector>

#include "scar/model.h"

namespace scar::models {

inline constexpr char kCheckpointMagic[4] = {'S', 'C', 'K', 'P'};
inline constexpr std::uint16_t kCheckpointVersion = 1;

// Little-endian SCKP layout:
//   "SCKP" | u16 version
//   config: u8 kind | u32 dim_a | u32 dim_b | u32 channels | u32 kernel |
//           u32 tokens | u32 heads_cross | u32 heads_refine
//   u32 tensor count
//   per tensor: u16 len + name | u8 rank | rank x u32 dims | f32 payload
std::vector<std::uint8_t> encode_checkpoint(const Model<float>& model);
// Format problems raise DataError; tensors that do not fit the stored
// config raise ShapeError.
Model<float> decode_checkpoint(std::span<const std::uint8_t> bytes);

void save_checkpoint(const Model<float>& model,
                     const std::filesystem::path& path);
Model<float> load_checkpoint(const std::filesystem::path& path);

}  // namespace scar::models
