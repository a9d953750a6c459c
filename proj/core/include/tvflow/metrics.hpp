#pragma once

#include "tvflow/grid.hpp"

#include <string>
#include <vector>

namespace tvflow {

/// Error measures of one (model, dataset) run. Pixels whose flow is unknown
/// in either field are excluded; n_pixels is the count that entered the
/// averages.
struct ErrorReport {
    std::string model_name;
    std::string dataset_name;
    double alpha = 0.0;
    double alpha1 = 0.0;
    int iterations = 0;
    double aee = 0.0;
    double ae = 0.0; // radians
    long n_pixels = 0;
    long n_masked = 0;
};

/// Average endpoint error: mean over valid pixels of
/// sqrt((v1-g1)^2 + (v2-g2)^2).
double aee(const FlowField& v, const FlowField& v_gt);

/// Angular error in radians: both fields are lifted to (v1, v2, 1), unit
/// normalized, and the mean arccos of their dot product is taken. The dot
/// product is clamped to [-1, 1] before arccos.
double ae(const FlowField& v, const FlowField& v_gt);

struct FlowErrors {
    double aee = 0.0;
    double ae = 0.0;
    long n_pixels = 0;
    long n_masked = 0;
};

/// Both measures in one pass, with the valid/masked pixel counts.
FlowErrors flow_errors(const FlowField& v, const FlowField& v_gt);

/// Rank aggregation across datasets: mean over datasets of error / (smallest
/// error among all models on that dataset).
struct ModelRanks {
    std::string model_name;
    double mean_rel_aee = 0.0;
    double mean_rel_ae = 0.0;
    int datasets = 0;
    /// Set when some dataset had a zero minimum error and this model was not
    /// the minimizer (its ratio is undefined and reported as +inf).
    bool degenerate = false;
};

/// One entry per model, in first-appearance order. Throws ConfigError on an
/// empty report list.
std::vector<ModelRanks> aggregate_ranks(const std::vector<ErrorReport>& reports);

} // namespace tvflow
