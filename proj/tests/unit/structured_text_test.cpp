#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bge/glass_fibre.hpp"
#include "bge/inference.hpp"
#include "bge/structured_text.hpp"

namespace io = bge::io;
namespace inf = bge::inference;

TEST(StructuredText, NumberFormatting) {
  EXPECT_EQ(io::format_number(0.1), "0.1");
  EXPECT_EQ(io::format_number(2.0 / 3.0), "0.6666666667");
  EXPECT_EQ(io::format_number(-1.5e-20), "-1.5e-20");
  EXPECT_EQ(io::format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(io::format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(StructuredText, FitRoundTrip) {
  const auto fit = inf::fit_mle(bge::glass_fibre::sample(), inf::Model::ge);
  const std::string text = io::to_structured(fit);
  const auto records = io::parse_records(text);
  ASSERT_EQ(records.size(), 1u);
  const auto back = io::fit_from_record(records[0]);
  EXPECT_EQ(io::to_structured(back), text);
  EXPECT_EQ(back.model, fit.model);
  EXPECT_EQ(back.converged, fit.converged);
  EXPECT_EQ(back.iterations, fit.iterations);
  EXPECT_NEAR(back.params.lambda(), fit.params.lambda(), 1e-9 * fit.params.lambda());
  EXPECT_NEAR(back.loglik, fit.loglik, 1e-9 * std::fabs(fit.loglik));
  EXPECT_NEAR(back.covariance(2, 3), fit.covariance(2, 3), 1e-9 * std::fabs(fit.covariance(2, 3)));
}

TEST(StructuredText, LrRoundTripInMultiRecordDocument) {
  const auto data = bge::glass_fibre::sample();
  const auto lr = inf::lr_test(inf::fit_mle(data, inf::Model::exp), inf::fit_mle(data, inf::Model::ge));
  const std::string doc = "# comment\n" + io::to_structured(lr.null_fit) + "\n" + io::to_structured(lr);
  const auto records = io::parse_records(doc);
  ASSERT_EQ(records.size(), 2u);
  const auto back = io::lr_from_record(records[1]);
  EXPECT_EQ(io::to_structured(back), io::to_structured(lr));
  EXPECT_EQ(back.dof, 1);
  EXPECT_EQ(back.null_model, inf::Model::exp);
}

TEST(StructuredText, ParseErrorsCarryLineNumbers) {
  try {
    io::parse_records("model=ge\nbroken line\n");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(io::fit_from_record({{"model", "ge"}}), std::invalid_argument);
}

TEST(StructuredText, JsonCarriesTheSameFields) {
  const auto fit = inf::fit_mle(bge::glass_fibre::sample(), inf::Model::exp);
  const auto j = io::to_json(fit);
  EXPECT_EQ(j.at("model"), "exp");
  EXPECT_NEAR(j.at("params").at("lambda").get<double>(), fit.params.lambda(), 1e-15);
  EXPECT_TRUE(j.at("converged").get<bool>());
}
