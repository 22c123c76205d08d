#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "tginv/fixtures.hpp"
#include "tginv/io.hpp"

using namespace tginv;

namespace {

bool bitwise_equal(const Tensor& a, const Tensor& b) {
  if (!(a.shape() == b.shape())) return false;
  return std::memcmp(a.entries().data(), b.entries().data(), sizeof(Complex) * a.size()) == 0;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void expect_field_error(const std::string& text, const std::string& field) {
  try {
    tensor_from_json(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("'" + field + "'"), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(TensorJson, Layout) {
  const std::string text = tensor_to_json(Tensor::from_vector(VectorXc{{Complex(1.5, -0.0), Complex(0.1, 2)}}));
  EXPECT_EQ(text,
            "{\n  \"order\": 1,\n  \"leading_dim\": 2,\n  \"trailing_dim\": 0,\n"
            "  \"entries_re\": [1.5, 0.10000000000000001],\n  \"entries_im\": [-0.0, 2]\n}\n");
}

TEST(TensorJson, BitwiseRoundTrip) {
  std::mt19937_64 rng(51);
  std::vector<Tensor> cases;
  for (const auto& [name, t] : fixtures::all()) cases.push_back(t);
  for (int trial = 0; trial < 20; ++trial) cases.push_back(oracle::random_tensor(rng, 1 + trial % 4, 3, 2));
  VectorXc odd{{Complex(-0.0, 0.0), Complex(1e-310, -1e300), Complex(1.0 / 3.0, -2.0 / 7.0)}};
  cases.push_back(Tensor::from_vector(odd));
  for (const Tensor& t : cases) EXPECT_TRUE(bitwise_equal(tensor_from_json(tensor_to_json(t)), t));
}

TEST(TensorJson, FieldErrors) {
  const std::string good_tail = R"("entries_re": [1, 2], "entries_im": [0, 0]})";
  expect_field_error(R"({"leading_dim": 2, "trailing_dim": 0, )" + good_tail, "order");
  expect_field_error(R"({"order": 1.5, "leading_dim": 2, "trailing_dim": 0, )" + good_tail, "order");
  expect_field_error(R"({"order": 1, "leading_dim": 0, "trailing_dim": 0, )" + good_tail, "leading_dim");
  expect_field_error(R"({"order": 2, "leading_dim": 2, "trailing_dim": 0, )" + good_tail, "trailing_dim");
  expect_field_error(R"({"order": 1, "leading_dim": 3, "trailing_dim": 0, )" + good_tail, "entries_re");
  expect_field_error(R"({"order": 1, "leading_dim": 2, "trailing_dim": 0, "entries_re": [1, 2], "entries_im": [0, "x"]})",
                     "entries_im");
  expect_field_error(R"({"order": 1, "leading_dim": 2, "trailing_dim": 0, "entries_re": [1, 2]})", "entries_im");
  EXPECT_THROW(tensor_from_json(std::string("{not json")), FormatError);
  EXPECT_THROW(tensor_from_json(std::string("[1, 2]")), FormatError);
}

TEST(TensorFile, MissingFile) { EXPECT_THROW(read_tensor_file("/nonexistent/t.json"), FormatError); }

TEST(Fixtures, ShippedFilesMatchGenerator) {
  const std::filesystem::path dir = TGINV_FIXTURE_DIR;
  for (const auto& [name, t] : fixtures::all()) {
    const auto path = dir / (name + ".json");
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    EXPECT_EQ(slurp(path), tensor_to_json(t)) << name;
    EXPECT_TRUE(bitwise_equal(read_tensor_file(path.string()), t)) << name;
  }
}

TEST(Fixtures, PrintedSlices) {
  // Slice i lists a_{i, :, :} row by row.
  EXPECT_EQ(fixtures::ex41_A().entries().real(),
            (Eigen::VectorXd{{1, 2, 3, 2, 4, 6, 3, 6, 9, 16, 8, 4, 8, 4, 2, 4, 2, 1, 4, 6, 8, 6, 9, 12, 8, 12, 16}}));
  EXPECT_EQ(fixtures::ex41_B_printed().entries().real(),
            (Eigen::VectorXd{{5, -5, 0, 5, 1, 0, 0, 0, -4, -14, 14, 0, 14, -2, 0, 0, 0, 11, 8, -8, 0, 8, 1, 0, 0, 0, -6}}));
  const VectorXc diff = fixtures::ex41_Bfix().entries() - fixtures::ex41_B_printed().entries();
  EXPECT_EQ(diff.cwiseAbs().sum(), 28.0);
  EXPECT_EQ(fixtures::ex41_Bfix()({1, 1, 0}), Complex(-14));
  EXPECT_EQ(fixtures::ex42_A().entries().real(), (Eigen::VectorXd{{25, -15, -15, 9, 100, -60, -60, 36}}));
  EXPECT_EQ(fixtures::ex42_B().entries().real(), (Eigen::VectorXd{{9, -6, -6, 4, 36, -24, -24, 16}}));
}

TEST(ReportJson, VerificationFieldOrder) {
  VerificationReport r;
  r.label = "one";
  r.samples_run = 3;
  const auto j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"identity", "pass", "samples", "max_residual", "branch_policy", "branch_note"}));
}
