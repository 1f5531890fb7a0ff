#pragma once

// Descriptor persistence: a versioned JSON document and a compact
// little-endian binary container with the same logical layout (see
// docs/descriptor_format.md).

#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mcm/descriptor.hpp"
#include "mcm/error.hpp"

namespace mcm {

inline constexpr int kDescriptorSchemaVersion = 1;
inline constexpr std::string_view kBinaryMagic = "MCMD";

struct StoredDescriptor {
  PersonDescriptor descriptor;
  nlohmann::json config;  // echo of the configuration that produced it
};

namespace serialization_detail {

inline void check_version(long long version) {
  if (version != kDescriptorSchemaVersion) {
    throw_data("descriptor schema version mismatch: file has version " +
               std::to_string(version) + ", this build reads version " +
               std::to_string(kDescriptorSchemaVersion));
  }
}

inline void check_patch(const PatchDescriptor& patch) {
  if (!is_valid_patch(patch)) {
    throw_data("descriptor contains an invalid patch (histogram must be "
               "non-negative with unit sum, y_pos in [0,1])");
  }
}

class ByteWriter {
 public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes_.append(s);
  }
  void raw(std::string_view s) { bytes_.append(s); }

  const std::string& bytes() const noexcept { return bytes_; }

 private:
  std::string bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    }
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    }
    pos_ += 8;
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint32_t n = u32();
    need(n);
    std::string out(bytes_.substr(pos_, n));
    pos_ += n;
    return out;
  }
  std::string_view raw(std::size_t n) {
    need(n);
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  bool done() const noexcept { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw_data("truncated binary descriptor");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace serialization_detail

inline nlohmann::json descriptor_to_json(const PersonDescriptor& d,
                                         const nlohmann::json& config = {}) {
  nlohmann::json parts = nlohmann::json::array();
  for (const PartSet& set : d.parts) {
    nlohmann::json patches = nlohmann::json::array();
    for (const PatchDescriptor& patch : set.patches) {
      patches.push_back({{"hsv", patch.hsv}, {"y_pos", patch.y_pos}});
    }
    parts.push_back(std::move(patches));
  }
  nlohmann::json doc;
  doc["schema_version"] = kDescriptorSchemaVersion;
  doc["person_id"] = d.person_id;
  doc["provenance"] = std::string(to_string(d.provenance));
  doc["seed"] = d.seed;
  doc["config"] = config.is_null() ? nlohmann::json::object() : config;
  doc["parts"] = std::move(parts);
  return doc;
}

inline StoredDescriptor descriptor_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.contains("schema_version")) {
      throw_data("descriptor has no schema_version field");
    }
    serialization_detail::check_version(doc.at("schema_version").get<long long>());
    StoredDescriptor out;
    PersonDescriptor& d = out.descriptor;
    d.person_id = doc.at("person_id").get<std::string>();
    d.provenance = parse_provenance(doc.at("provenance").get<std::string>());
    d.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("config")) out.config = doc.at("config");
    for (const auto& part : doc.at("parts")) {
      PartSet set;
      for (const auto& item : part) {
        const auto& hsv = item.at("hsv");
        if (hsv.size() != kHistogramBins) {
          throw_data("patch histogram must have " +
                     std::to_string(kHistogramBins) + " bins");
        }
        PatchDescriptor patch;
        for (int i = 0; i < kHistogramBins; ++i) patch.hsv[i] = hsv[i].get<double>();
        patch.y_pos = item.at("y_pos").get<double>();
        serialization_detail::check_patch(patch);
        set.patches.push_back(patch);
      }
      d.parts.push_back(std::move(set));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw_data(std::string("malformed descriptor JSON: ") + e.what());
  }
}

inline std::string descriptor_to_binary(const PersonDescriptor& d,
                                        const nlohmann::json& config = {}) {
  serialization_detail::ByteWriter w;
  w.raw(kBinaryMagic);
  w.u32(kDescriptorSchemaVersion);
  w.u32(d.provenance == Provenance::kTemplate ? 0 : 1);
  w.u64(d.seed);
  w.str(d.person_id);
  w.str(config.is_null() ? "{}" : config.dump());
  w.u32(static_cast<std::uint32_t>(d.parts.size()));
  for (const PartSet& set : d.parts) {
    w.u32(static_cast<std::uint32_t>(set.size()));
    for (const PatchDescriptor& patch : set.patches) {
      for (double v : patch.hsv) w.f64(v);
      w.f64(patch.y_pos);
    }
  }
  return w.bytes();
}

inline StoredDescriptor descriptor_from_binary(std::string_view bytes) {
  serialization_detail::ByteReader r(bytes);
  if (r.raw(kBinaryMagic.size()) != kBinaryMagic) {
    throw_data("not a binary descriptor (bad magic)");
  }
  serialization_detail::check_version(r.u32());
  StoredDescriptor out;
  PersonDescriptor& d = out.descriptor;
  const std::uint32_t provenance = r.u32();
  if (provenance > 1) throw_data("bad provenance code in binary descriptor");
  d.provenance = provenance == 0 ? Provenance::kTemplate : Provenance::kProbe;
  d.seed = r.u64();
  d.person_id = r.str();
  try {
    out.config = nlohmann::json::parse(r.str());
  } catch (const nlohmann::json::exception& e) {
    throw_data(std::string("bad config echo in binary descriptor: ") + e.what());
  }
  const std::uint32_t num_parts = r.u32();
  for (std::uint32_t j = 0; j < num_parts; ++j) {
    PartSet set;
    const std::uint32_t n = r.u32();
    for (std::uint32_t i = 0; i < n; ++i) {
      PatchDescriptor patch;
      for (double& v : patch.hsv) v = r.f64();
      patch.y_pos = r.f64();
      serialization_detail::check_patch(patch);
      set.patches.push_back(patch);
    }
    d.parts.push_back(std::move(set));
  }
  if (!r.done()) throw_data("trailing bytes after binary descriptor");
  return out;
}

enum class DescriptorFormat { kJson, kBinary };

inline void save_descriptor(const PersonDescriptor& d,
                            const std::filesystem::path& path,
                            DescriptorFormat format,
                            const nlohmann::json& config = {}) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_io("cannot write descriptor: " + path.string());
  if (format == DescriptorFormat::kJson) {
    out << descriptor_to_json(d, config).dump(1) << '\n';
  } else {
    const std::string bytes = descriptor_to_binary(d, config);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  if (!out) throw_io("write failed: " + path.string());
}

// Reads either format, detected from the leading bytes.
inline StoredDescriptor load_descriptor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot open descriptor: " + path.string());
  const std::string bytes{std::istreambuf_iterator<char>(in),
                          std::istreambuf_iterator<char>()};
  if (bytes.compare(0, kBinaryMagic.size(), kBinaryMagic) == 0) {
    return descriptor_from_binary(bytes);
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw_data("cannot parse descriptor " + path.string() + ": " + e.what());
  }
  return descriptor_from_json(doc);
}

}  // namespace mcm
