#pragma once

#include <Eigen/Core>
#include <span>
#include <string>

#include "agfd/errors.hpp"

namespace agfd {

// Orthonormal filters. Daubechies filters are named by vanishing-moment
// count (db2 has 4 taps, db8 has 16). `identity` makes the transform a
// no-op while keeping the level layout; it exists as a test hook.
enum class WaveletFilter { haar, db2, db4, db8, identity };

WaveletFilter parse_wavelet_filter(const std::string& name);
std::string wavelet_filter_name(WaveletFilter filter);

// Plan for a periodic orthonormal DWT of a length-M signal, M = 2^J.
//
// Coefficient layout (frozen; shrinkage rules index into it by level):
//   [ scaling block, length 2^J0 | detail level J0, length 2^J0 |
//     detail level J0+1, length 2^(J0+1) | ... | detail level J-1 ]
// Detail blocks run coarse to fine and their lengths sum with the scaling
// block to M.
class TransformPlan {
public:
    TransformPlan(int signal_length, int primary_level,
                  WaveletFilter filter = WaveletFilter::db8);

    int length() const { return length_; }           // M
    int levels() const { return levels_; }           // J = log2(M)
    int primary_level() const { return primary_; }   // J0
    WaveletFilter filter() const { return filter_; }

    // Lowpass (scaling) filter taps; highpass taps are the quadrature
    // mirror g[n] = (-1)^n h[T-1-n].
    std::span<const double> lowpass() const;

    int scaling_length() const { return 1 << primary_; }
    int detail_offset(int level) const;   // offset of detail block `level`
    int detail_length(int level) const { check_level(level); return 1 << level; }
    int level_of(int index) const;        // level of a detail coefficient; -1 for scaling

private:
    void check_level(int level) const;

    int length_;
    int levels_;
    int primary_;
    WaveletFilter filter_;
};

// Forward transform: returns W * signal in the plan's layout. Orthonormal,
// so energy is preserved.
Eigen::VectorXd dwt(const Eigen::VectorXd& signal, const TransformPlan& plan);

// Inverse transform: returns W' * coeffs; exact inverse of dwt.
Eigen::VectorXd idwt(const Eigen::VectorXd& coeffs, const TransformPlan& plan);

// Columnwise dwt/idwt over a panel whose columns are signals.
Eigen::MatrixXd dwt_panel(const Eigen::MatrixXd& panel, const TransformPlan& plan);
Eigen::MatrixXd idwt_panel(const Eigen::MatrixXd& panel, const TransformPlan& plan);

// Materializes the orthogonal transform matrix W (result * x == dwt(x)) by
// transforming unit vectors. Guarded to M <= 4096.
Eigen::MatrixXd build_transform_matrix(const TransformPlan& plan);

// Robust per-level noise scale: median(|detail block j|) / 0.6745.
double mad_sigma_level(const Eigen::VectorXd& coeffs, int level, const TransformPlan& plan);

}  // namespace agfd
