// models/checkpoint.cc

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

#include "scar/checkpoint.h"

#include <cmath>
#include <cstring>

#include "scar/byte_io.h"
#include "scar/fmeb.h"

namespace scar::models {

using data::ByteReader;
using data::ByteWriter;

std::vector<std::uint8_t> encode_checkpoint(const Model<float>& model) {
  const ModelConfig& c = model.config();
  ByteWriter w;
  w.put_bytes({reinterpret_cast<const std::uint8_t*>(kCheckpointMagic), 4});
  w.put<std::uint16_t>(kCheckpointVersion);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(c.kind));
  for (std::uint32_t v : {c.dim_a, c.dim_b, c.channels, c.kernel, c.tokens,
                          c.heads_cross, c.heads_refine}) {
    w.put<std::uint32_t>(v);
  }
  w.put<std::uint32_t>(static_cast<std::uint32_t>(model.params().size()));
  for (std::size_t i = 0; i < model.params().size(); ++i) {
    const auto& t = model.params()[i];
    w.put_string16(model.layout()[i].name);
    w.put<std::uint8_t>(static_cast<std::uint8_t>(t.rank()));
    for (std::size_t d : t.shape()) w.put<std::uint32_t>(static_cast<std::uint32_t>(d));
    w.put_floats(t.data());
  }
  return std::move(w.bytes());
}

Model<float> decode_checkpoint(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  char magic[4];
  for (char& ch : magic) ch = static_cast<char>(r.get<std::uint8_t>("magic"));
  if (std::memcmp(magic, kCheckpointMagic, 4) != 0) {
    throw DataError(DataError::Kind::kMagicMismatch,
                    "bad magic \"" + std::string(magic, 4) +
                        "\", expected \"SCKP\"");
  }
  const auto version = r.get<std::uint16_t>("version");
  if (version != kCheckpointVersion) {
    throw DataError(DataError::Kind::kUnsupportedVersion,
                    "unsupported checkpoint version " +
                        std::to_string(version));
  }
  ModelConfig c;
  const auto kind = r.get<std::uint8_t>("model kind");
  if (kind > static_cast<std::uint8_t>(ModelKind::kScar)) {
    throw DataError(DataError::Kind::kValidation,
                    "unknown model kind " + std::to_string(kind));
  }
  c.kind = static_cast<ModelKind>(kind);
  c.dim_a = r.get<std::uint32_t>("dim_a");
  c.dim_b = r.get<std::uint32_t>("dim_b");
  c.channels = r.get<std::uint32_t>("channels");
  c.kernel = r.get<std::uint32_t>("kernel");
  c.tokens = r.get<std::uint32_t>("tokens");
  c.heads_cross = r.get<std::uint32_t>("heads_cross");
  c.heads_refine = r.get<std::uint32_t>("heads_refine");
  std::vector<ParamSpec> layout;
  try {
    layout = parameter_layout(c);
  } catch (const ConfigError& e) {
    throw DataError(DataError::Kind::kValidation,
                    std::string("invalid stored config: ") + e.what());
  }

  const auto count = r.get<std::uint32_t>("tensor count");
  if (count != layout.size()) {
    throw ShapeError("checkpoint holds " + std::to_string(count) +
                     " tensors, " + describe(c) + " needs " +
                     std::to_string(layout.size()));
  }
  std::vector<Tensor<float>> params;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::string name = r.get_string16("tensor name");
    const auto rank = r.get<std::uint8_t>("tensor rank");
    Shape shape(rank);
    for (auto& d : shape) d = r.get<std::uint32_t>("tensor dims");
    if (name != layout[i].name || shape != layout[i].shape) {
      throw ShapeError("checkpoint tensor " + std::to_string(i) + " is " +
                       name + shape_to_string(shape) + ", expected " +
                       layout[i].name + shape_to_string(layout[i].shape));
    }
    std::vector<float> values(shape_numel(shape));
    r.get_floats(values, "tensor payload");
    for (float v : values) {
      if (!std::isfinite(v)) {
        throw DataError(DataError::Kind::kNonFinite,
                        "non-finite value in checkpoint tensor " + name);
      }
    }
    params.emplace_back(std::move(shape), std::move(values));
  }
  if (r.remaining() != 0) {
    throw DataError(DataError::Kind::kValidation,
                    std::to_string(r.remaining()) +
                        " trailing bytes at byte offset " +
                        std::to_string(r.position()));
  }
  return Model<float>(c, std::move(params));
}

void save_checkpoint(const Model<float>& model,
                     const std::filesystem::path& path) {
  data::write_file_bytes(path, encode_checkpoint(model));
}

Model<float> load_checkpoint(const std::filesystem::path& path) {
  return decode_checkpoint(data::read_file_bytes(path));
}

}  // namespace scar::models
