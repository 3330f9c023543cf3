// data/fmeb.cc

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

#include "scar/fmeb.h"

#include <cmath>
#include <cstring>
#include <fstream>

#include "scar/byte_io.h"

namespace scar::data {

namespace {

bool valid_utf8(const std::string& s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra;
    if (c < 0x80) {
      extra = 0;
    } else if ((c >> 5) == 0x6 && c >= 0xc2) {
      extra = 1;
    } else if ((c >> 4) == 0xe) {
      extra = 2;
    } else if ((c >> 3) == 0x1e && c <= 0xf4) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= s.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
    }
    i += extra + 1;
  }
  return true;
}

void validate_record(const EmbeddingRecord& r, std::uint32_t dim) {
  if (r.utterance_id.empty()) {
    throw DataError(DataError::Kind::kValidation, "empty utterance id");
  }
  if (!valid_utf8(r.utterance_id)) {
    throw DataError(DataError::Kind::kValidation,
                    "utterance id is not valid UTF-8");
  }
  if (static_cast<std::uint8_t>(r.label) > 1) {
    throw DataError(DataError::Kind::kValidation,
                    "invalid label " +
                        std::to_string(static_cast<int>(r.label)) + " for " +
                        r.utterance_id);
  }
  if (static_cast<std::uint8_t>(r.split) > 2) {
    throw DataError(DataError::Kind::kValidation,
                    "invalid split " +
                        std::to_string(static_cast<int>(r.split)) + " for " +
                        r.utterance_id);
  }
  if (r.vector.size() != dim) {
    throw DataError(DataError::Kind::kValidation,
                    "record " + r.utterance_id + " has " +
                        std::to_string(r.vector.size()) +
                        " values, set dim is " + std::to_string(dim));
  }
  for (float v : r.vector) {
    if (!std::isfinite(v)) {
      throw DataError(DataError::Kind::kNonFinite,
                      "non-finite value in record " + r.utterance_id);
    }
  }
}

}  // namespace

const char* to_string(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kDev:
      return "dev";
    case Split::kTest:
      return "test";
  }
  return "?";
}

Split parse_split(const std::string& name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  throw ConfigError("unknown split '" + name + "' (expected train, dev, test)");
}

EmbeddingSet::EmbeddingSet(std::string fm_name, std::uint32_t dim)
    : fm_name_(std::move(fm_name)), dim_(dim) {
  if (dim_ == 0) {
    throw DataError(DataError::Kind::kValidation,
                    "embedding dimension must be positive");
  }
  if (!valid_utf8(fm_name_)) {
    throw DataError(DataError::Kind::kValidation,
                    "fm_name is not valid UTF-8");
  }
}

void EmbeddingSet::add(EmbeddingRecord record) {
  validate_record(record, dim_);
  if (!ids_.insert(record.utterance_id).second) {
    throw DataError(DataError::Kind::kValidation,
                    "duplicate utterance id " + record.utterance_id);
  }
  records_.push_back(std::move(record));
}

bool operator==(const EmbeddingRecord& a, const EmbeddingRecord& b) {
  // Bitwise comparison so -0.0 and 0.0 are told apart.
  return a.utterance_id == b.utterance_id && a.label == b.label &&
         a.split == b.split && a.vector.size() == b.vector.size() &&
         std::memcmp(a.vector.data(), b.vector.data(),
                     a.vector.size() * sizeof(float)) == 0;
}

bool operator==(const EmbeddingSet& a, const EmbeddingSet& b) {
  return a.fm_name_ == b.fm_name_ && a.dim_ == b.dim_ &&
         a.records_ == b.records_;
}

std::size_t fmeb_encoded_size(const EmbeddingSet& set) {
  std::size_t size = 4 + 2 + 2 + set.fm_name().size() + 4 + 8;
  for (const auto& r : set.records()) {
    size += 2 + r.utterance_id.size() + 1 + 1 + 4 * std::size_t{set.dim()};
  }
  return size;
}

std::vector<std::uint8_t> encode_fmeb(const EmbeddingSet& set) {
  for (const auto& r : set.records()) validate_record(r, set.dim());
  ByteWriter w;
  w.bytes().reserve(fmeb_encoded_size(set));
  w.put_bytes({reinterpret_cast<const std::uint8_t*>(kFmebMagic), 4});
  w.put<std::uint16_t>(kFmebVersion);
  w.put_string16(set.fm_name());
  w.put<std::uint32_t>(set.dim());
  w.put<std::uint64_t>(set.size());
  for (const auto& r : set.records()) {
    w.put_string16(r.utterance_id);
    w.put<std::uint8_t>(static_cast<std::uint8_t>(r.label));
    w.put<std::uint8_t>(static_cast<std::uint8_t>(r.split));
    w.put_floats(r.vector);
  }
  return std::move(w.bytes());
}

EmbeddingSet decode_fmeb(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  char magic[4];
  for (char& c : magic) c = static_cast<char>(r.get<std::uint8_t>("magic"));
  if (std::memcmp(magic, kFmebMagic, 4) != 0) {
    throw DataError(DataError::Kind::kMagicMismatch,
                    "bad magic \"" + std::string(magic, 4) +
                        "\", expected \"FMEB\"");
  }
  const auto version = r.get<std::uint16_t>("version");
  if (version != kFmebVersion) {
    throw DataError(DataError::Kind::kUnsupportedVersion,
                    "unsupported FMEB version " + std::to_string(version));
  }
  std::string fm_name = r.get_string16("fm_name");
  const auto dim = r.get<std::uint32_t>("dim");
  const auto count = r.get<std::uint64_t>("count");
  EmbeddingSet set(std::move(fm_name), dim);

  const std::uint64_t min_record = 2 + 1 + 1 + 4ULL * dim;
  if (count > r.remaining() / min_record) {
    throw DataError(DataError::Kind::kTruncated,
                    "truncated file: header declares " +
                        std::to_string(count) + " records but only " +
                        std::to_string(r.remaining()) +
                        " bytes follow the header at byte offset " +
                        std::to_string(r.position()));
  }
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::size_t record_offset = r.position();
    EmbeddingRecord rec;
    rec.utterance_id = r.get_string16("utterance_id");
    rec.label = static_cast<Label>(r.get<std::uint8_t>("label"));
    rec.split = static_cast<Split>(r.get<std::uint8_t>("split"));
    rec.vector.resize(dim);
    r.get_floats(rec.vector, "vector");
    try {
      set.add(std::move(rec));
    } catch (const DataError& e) {
      throw DataError(e.kind(), std::string(e.what()) + " (record " +
                                    std::to_string(i) + " at byte offset " +
                                    std::to_string(record_offset) + ")");
    }
  }
  if (r.remaining() != 0) {
    throw DataError(DataError::Kind::kValidation,
                    std::to_string(r.remaining()) +
                        " trailing bytes after last record at byte offset " +
                        std::to_string(r.position()));
  }
  return set;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError(DataError::Kind::kIo, "cannot open " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw DataError(DataError::Kind::kIo, "read failed for " + path.string());
  }
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path,
                      std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw DataError(DataError::Kind::kIo,
                    "cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw DataError(DataError::Kind::kIo, "write failed for " + path.string());
  }
}

void write_fmeb(const EmbeddingSet& set, const std::filesystem::path& path) {
  write_file_bytes(path, encode_fmeb(set));
}

EmbeddingSet read_fmeb(const std::filesystem::path& path) {
  return decode_fmeb(read_file_bytes(path));
}

}  // namespace scar::data
