// Copyright 2026 The MCE Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCE_COMMON_BYTE_IO_H_
#define MCE_COMMON_BYTE_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mce {

// Little-endian append-only buffer used by the binary file formats.
class ByteWriter {
 public:
  void U8(uint8_t v) { buffer_.push_back(v); }
  void U16(uint16_t v);
  void U32(uint32_t v);
  void I32(int32_t v) { U32(static_cast<uint32_t>(v)); }
  void U64(uint64_t v);
  void F64(double v);
  void Bytes(std::span<const uint8_t> bytes);
  void String(std::string_view s);  // u32 length + bytes

  size_t size() const { return buffer_.size(); }
  std::vector<uint8_t>& buffer() { return buffer_; }
  std::vector<uint8_t> Take() { return std::move(buffer_); }

 private:
  std::vector<uint8_t> buffer_;
};

// Bounds-checked little-endian reader. Running past the end throws
// Error(kTruncated) naming `section`.
class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  void set_section(std::string_view section) { section_ = section; }

  uint8_t U8();
  uint16_t U16();
  uint32_t U32();
  int32_t I32() { return static_cast<int32_t>(U32()); }
  uint64_t U64();
  double F64();
  std::span<const uint8_t> Bytes(size_t n);
  std::string String();

  size_t position() const { return pos_; }
  size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void Need(size_t n) const;

  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
  std::string section_ = "data";
};

std::vector<uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path, std::span<const uint8_t> bytes);
void WriteFileText(const std::filesystem::path& path, std::string_view text);
std::string ReadFileText(const std::filesystem::path& path);

}  // namespace mce

#endif  // MCE_COMMON_BYTE_IO_H_
