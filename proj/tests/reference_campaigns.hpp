#pragma once

// Published reference campaigns transcribed row by row: iteration, top
// feature, metric, and the printed interval (NaN where the row has none).
// `out_of_band` marks rows reported outside the previous interval.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace reference {

struct Row {
  int iteration;
  const char* msf;
  double accuracy;
  double li;
  double ui;
  bool out_of_band;
};

inline constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

// CDC diabetes, logistic regression, F1.
inline const std::vector<Row> kDiabetes = {
    {1, "GenHlth", 0.7318, 0.5945, 0.8691, false},
    {2, "BMI", 0.7221, 0.5859, 0.8584, false},
    {3, "HighBP", 0.7084, 0.5394, 0.8775, false},
    {4, "HighChol", 0.6785, 0.5269, 0.8302, false},
    {5, "Age", 0.654, 0.5042, 0.8038, false},
    {6, "DiffWalk", 0.6191, 0.5083, 0.73, false},
    {7, "HeartDiseaseorAttack", 0.6117, 0.5163, 0.7071, false},
    {8, "PhysHlth", 0.6069, 0.4979, 0.716, false},
    {9, "Income", 0.6085, 0.487, 0.73, false},
    {10, "PhysActivity", 0.5953, 0.4863, 0.7043, false},
    {11, "Education", 0.5818, 0.4467, 0.7169, false},
    {12, "Sex", 0.5552, 0.4523, 0.6581, false},
    {13, "Smoker", 0.6076, 0.4632, 0.752, false},
    {14, "MentHlth", 0.493, 0.3881, 0.5978, false},
    {15, "Veggies", 0.4457, 0.3353, 0.5562, false},
    {16, "Stroke", 0.5164, 0.3931, 0.6397, false},
    {17, "HvyAlcoholConsump", 0.6716, 0.4657, 0.8774, true},
    {18, "CholCheck", 0.4843, 0.3072, 0.6615, false},
    {19, "Fruits", 0.4772, 0.2952, 0.6591, false},
    {20, "AnyHealthcare", 0.1513, kNone, kNone, true},
};

// White wine quality, OLS, R2.
inline const std::vector<Row> kWine = {
    {1, "alcohol", 0.2921, 0.2243, 0.36, false},
    {2, "density", 0.2643, 0.1831, 0.3456, false},
    {3, "total_sulfur_dioxide", 0.1453, 0.105, 0.1855, false},
    {4, "volatile_acidity", 0.1128, 0.0733, 0.1524, false},
    {5, "chlorides", 0.0757, 0.0536, 0.0978, false},
    {6, "citric_acid", 0.0293, 0.0208, 0.0377, true},
    {7, "fixed_acidity", 0.0156, 0.0114, 0.0198, true},
    {8, "free_sulfur_dioxide", 0.0091, 0.005, 0.0132, true},
    {9, "residual_sugar", 0.0024, 0.0013, 0.0035, true},
    {10, "sulphates", 0.0016, kNone, kNone, false},
};

// Simulated 20-feature classification, logistic regression, F1.
inline const std::vector<Row> kSimulated = {
    {1, "X6", 0.7899, 0.6754, 0.9044, false},   {2, "X17", 0.7899, 0.6926, 0.8871, false},
    {3, "X12", 0.7899, 0.6026, 0.9773, false},  {4, "X20", 0.7539, 0.5574, 0.9504, false},
    {5, "X18", 0.7065, 0.5982, 0.8147, false},  {6, "X19", 0.6812, 0.5689, 0.7936, false},
    {7, "X8", 0.6681, 0.524, 0.8122, false},    {8, "X9", 0.6419, 0.5015, 0.7822, false},
    {9, "X7", 0.6158, 0.4184, 0.8131, false},   {10, "X2", 0.5779, 0.2725, 0.8833, false},
    {11, "X1", 0.5212, 0.3942, 0.6482, false},  {12, "X14", 0.5227, 0.4247, 0.6206, false},
    {13, "X5", 0.5177, 0.4108, 0.6247, false},  {14, "X4", 0.5171, 0.3912, 0.643, false},
    {15, "X3", 0.5277, 0.3872, 0.6682, false},  {16, "X10", 0.5288, 0.3771, 0.6806, false},
    {17, "X11", 0.5391, 0.3622, 0.7159, false}, {18, "X15", 0.5572, 0.3234, 0.7911, false},
    {19, "X13", 0.5741, kNone, kNone, false},
};

// The ten wine features used in the reference campaign.
inline const std::vector<std::string> kWineFeatures = {
    "fixed_acidity", "volatile_acidity", "citric_acid",          "residual_sugar", "chlorides",
    "free_sulfur_dioxide", "total_sulfur_dioxide", "density", "sulphates",      "alcohol"};

/// FCP implied by a printed interval: (UI - LI) / (2 * accuracy).
inline double implied_fcp(const Row& r) { return (r.ui - r.li) / (2.0 * r.accuracy); }

}  // namespace reference
