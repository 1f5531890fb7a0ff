#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "mcm/serialization.hpp"
#include "test_util.hpp"

namespace mcm {
namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "mcm_serialization_test";
  fs::create_directories(dir);
  return dir / name;
}

PersonDescriptor sample(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  PersonDescriptor d = testing::random_person(gen, "person-7", 3, 9);
  d.provenance = Provenance::kTemplate;
  d.seed = 0xdeadbeefcafef00dULL;
  return d;
}

TEST(Serialization, JsonRoundTripIsExact) {
  const PersonDescriptor d = sample(1);
  const nlohmann::json config{{"beta", 0.6}};
  const StoredDescriptor back = descriptor_from_json(
      nlohmann::json::parse(descriptor_to_json(d, config).dump()));
  EXPECT_EQ(back.descriptor, d);
  EXPECT_EQ(back.config, config);
}

TEST(Serialization, BinaryRoundTripIsExact) {
  const PersonDescriptor d = sample(2);
  const std::string bytes = descriptor_to_binary(d, {{"k", 10}});
  EXPECT_EQ(bytes.substr(0, 4), "MCMD");
  const StoredDescriptor back = descriptor_from_binary(bytes);
  EXPECT_EQ(back.descriptor, d);
  EXPECT_EQ(back.config.at("k"), 10);
}

TEST(Serialization, FilesAutoDetectFormat) {
  const PersonDescriptor d = sample(3);
  const fs::path json_path = temp_file("d.json");
  const fs::path bin_path = temp_file("d.bin");
  save_descriptor(d, json_path, DescriptorFormat::kJson);
  save_descriptor(d, bin_path, DescriptorFormat::kBinary);
  EXPECT_EQ(load_descriptor(json_path).descriptor, d);
  EXPECT_EQ(load_descriptor(bin_path).descriptor, d);
}

TEST(Serialization, VersionMismatchIsExplicit) {
  nlohmann::json doc = descriptor_to_json(sample(4));
  doc["schema_version"] = 99;
  try {
    descriptor_from_json(doc);
    FAIL() << "expected a version error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kData);
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("99"), std::string::npos);
  }
  std::string bytes = descriptor_to_binary(sample(4));
  bytes[4] = 2;
  EXPECT_THROW(descriptor_from_binary(bytes), Error);
}

TEST(Serialization, RejectsDamagedInput) {
  const std::string bytes = descriptor_to_binary(sample(5));
  EXPECT_THROW(descriptor_from_binary(bytes.substr(0, bytes.size() - 3)), Error);
  EXPECT_THROW(descriptor_from_binary(bytes + "x"), Error);
  EXPECT_THROW(descriptor_from_binary("XXXX"), Error);

  nlohmann::json doc = descriptor_to_json(sample(5));
  doc["parts"][0][0]["hsv"][0] = 5.0;  // breaks the unit sum
  EXPECT_THROW(descriptor_from_json(doc), Error);
  doc = descriptor_to_json(sample(5));
  doc["parts"][0][0]["hsv"].erase(0);
  EXPECT_THROW(descriptor_from_json(doc), Error);
  doc = descriptor_to_json(sample(5));
  doc.erase("person_id");
  EXPECT_THROW(descriptor_from_json(doc), Error);

  const fs::path junk = temp_file("junk.json");
  std::ofstream(junk) << "{ not json";
  EXPECT_THROW(load_descriptor(junk), Error);
  EXPECT_THROW(load_descriptor(temp_file("absent.json")), Error);
}

TEST(Serialization, RandomRoundTrips) {
  std::mt19937_64 gen(6);
  for (int i = 0; i < 200; ++i) {
    PersonDescriptor d = testing::random_person(gen, "id" + std::to_string(i), 1, 5);
    d.seed = gen();
    d.provenance = i % 2 ? Provenance::kProbe : Provenance::kTemplate;
    ASSERT_EQ(descriptor_from_binary(descriptor_to_binary(d)).descriptor, d);
    ASSERT_EQ(descriptor_from_json(nlohmann::json::parse(descriptor_to_json(d).dump()))
                  .descriptor,
              d);
  }
}

}  // namespace
}  // namespace mcm
