#include "agfd/wavelet.hpp"

#include <array>
#include <cmath>

#include "agfd/stats.hpp"

namespace agfd {

namespace {

// Daubechies extremal-phase scaling filters, named by vanishing-moment
// count. Stored in synthesis orientation: sum h = sqrt(2), even shifts of
// h are orthonormal. Values were produced by spectral factorization of the
// Daubechies polynomial in 60-digit arithmetic and rounded to double.
constexpr std::array<double, 2> kHaar = {
    0.70710678118654752440, 0.70710678118654752440};

constexpr std::array<double, 4> kDb2 = {
    0.48296291314453414337, 0.83651630373780790558,
    0.22414386804201338103, -0.12940952255126038117};

constexpr std::array<double, 8> kDb4 = {
    0.23037781330889650086, 0.71484657055291564709,
    0.63088076792985890788, -0.027983769416859854211,
    -0.18703481171909308408, 0.030841381835560763627,
    0.032883011666885199735, -0.010597401785069032105};

constexpr std::array<double, 16> kDb8 = {
    0.054415842243104009955, 0.31287159091429997066,
    0.67563073629728980681, 0.58535468365420671277,
    -0.015829105256349305667, -0.28401554296154692652,
    0.00047248457391328277036, 0.12874742662047845886,
    -0.01736930100180754617, -0.044088253930794751507,
    0.013981027917398281649, 0.0087460940474057767164,
    -0.0048703529934515743104, -0.0003917403733769470463,
    0.00067544940645056936637, -0.00011747678412476953373};

std::span<const double> filter_taps(WaveletFilter f) {
    switch (f) {
        case WaveletFilter::haar: return kHaar;
        case WaveletFilter::db2: return kDb2;
        case WaveletFilter::db4: return kDb4;
        case WaveletFilter::db8: return kDb8;
        case WaveletFilter::identity: return {};
    }
    throw InvalidInputError("unknown wavelet filter");
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int int_log2(int n) {
    int j = 0;
    while ((1 << j) < n) ++j;
    return j;
}

// One analysis step: approx/detail of length len/2 from a length-len block.
// a_k = sum_n h[n] x[(2k+n) mod len], d_k likewise with the mirror filter.
void analysis_step(const double* x, int len, std::span<const double> h,
                   double* approx, double* detail) {
    const int taps = static_cast<int>(h.size());
    const int half = len / 2;
    for (int k = 0; k < half; ++k) {
        double a = 0.0, d = 0.0;
        for (int n = 0; n < taps; ++n) {
            const double hv = h[n];
            const double gv = ((n & 1) ? -1.0 : 1.0) * h[taps - 1 - n];
            const double xv = x[(2 * k + n) % len];
            a += hv * xv;
            d += gv * xv;
        }
        approx[k] = a;
        detail[k] = d;
    }
}

// Transpose of analysis_step; exact inverse because the step is orthogonal.
void synthesis_step(const double* approx, const double* detail, int len,
                    std::span<const double> h, double* x) {
    const int taps = static_cast<int>(h.size());
    const int half = len / 2;
    std::fill(x, x + len, 0.0);
    for (int k = 0; k < half; ++k) {
        const double a = approx[k];
        const double d = detail[k];
        for (int n = 0; n < taps; ++n) {
            const double hv = h[n];
            const double gv = ((n & 1) ? -1.0 : 1.0) * h[taps - 1 - n];
            x[(2 * k + n) % len] += hv * a + gv * d;
        }
    }
}

}  // namespace

WaveletFilter parse_wavelet_filter(const std::string& name) {
    if (name == "haar" || name == "db1") return WaveletFilter::haar;
    if (name == "db2") return WaveletFilter::db2;
    if (name == "db4") return WaveletFilter::db4;
    if (name == "db8") return WaveletFilter::db8;
    if (name == "identity") return WaveletFilter::identity;
    throw InvalidInputError("unknown wavelet filter '" + name +
                            "' (expected haar, db2, db4, db8 or identity)");
}

std::string wavelet_filter_name(WaveletFilter filter) {
    switch (filter) {
        case WaveletFilter::haar: return "haar";
        case WaveletFilter::db2: return "db2";
        case WaveletFilter::db4: return "db4";
        case WaveletFilter::db8: return "db8";
        case WaveletFilter::identity: return "identity";
    }
    return "?";
}

TransformPlan::TransformPlan(int signal_length, int primary_level, WaveletFilter filter)
    : length_(signal_length), levels_(0), primary_(primary_level), filter_(filter) {
    if (!is_power_of_two(length_))
        throw InvalidInputError("signal length " + std::to_string(length_) +
                                " is not a power of two");
    levels_ = int_log2(length_);
    if (primary_ < 0 || primary_ >= levels_)
        throw InvalidInputError("primary resolution level " + std::to_string(primary_) +
                                " must satisfy 0 <= J0 < log2(M) = " + std::to_string(levels_));
}

std::span<const double> TransformPlan::lowpass() const { return filter_taps(filter_); }

void TransformPlan::check_level(int level) const {
    if (level < primary_ || level >= levels_)
        throw InvalidInputError("level " + std::to_string(level) + " outside [J0, J-1] = [" +
                                std::to_string(primary_) + ", " + std::to_string(levels_ - 1) + "]");
}

int TransformPlan::detail_offset(int level) const {
    check_level(level);
    // scaling block + all detail blocks below `level`
    return (1 << primary_) + ((1 << level) - (1 << primary_));
}

int TransformPlan::level_of(int index) const {
    if (index < 0 || index >= length_)
        throw InvalidInputError("coefficient index out of range");
    if (index < scaling_length()) return -1;
    int level = primary_;
    while (index >= detail_offset(level) + detail_length(level)) ++level;
    return level;
}

Eigen::VectorXd dwt(const Eigen::VectorXd& signal, const TransformPlan& plan) {
    if (signal.size() != plan.length())
        throw InvalidInputError("dwt: signal length " + std::to_string(signal.size()) +
                                " does not match plan length " + std::to_string(plan.length()));
    if (plan.filter() == WaveletFilter::identity) return signal;

    Eigen::VectorXd out(plan.length());
    Eigen::VectorXd approx = signal;
    Eigen::VectorXd next(plan.length() / 2);
    const auto h = plan.lowpass();
    for (int level = plan.levels() - 1; level >= plan.primary_level(); --level) {
        const int len = 1 << (level + 1);
        analysis_step(approx.data(), len, h, next.data(),
                      out.data() + plan.detail_offset(level));
        approx.head(len / 2) = next.head(len / 2);
    }
    out.head(plan.scaling_length()) = approx.head(plan.scaling_length());
    return out;
}

Eigen::VectorXd idwt(const Eigen::VectorXd& coeffs, const TransformPlan& plan) {
    if (coeffs.size() != plan.length())
        throw InvalidInputError("idwt: coefficient length " + std::to_string(coeffs.size()) +
                                " does not match plan length " + std::to_string(plan.length()));
    if (plan.filter() == WaveletFilter::identity) return coeffs;

    Eigen::VectorXd approx = coeffs.head(plan.scaling_length());
    Eigen::VectorXd next(plan.length());
    const auto h = plan.lowpass();
    for (int level = plan.primary_level(); level < plan.levels(); ++level) {
        const int len = 1 << (level + 1);
        synthesis_step(approx.data(), coeffs.data() + plan.detail_offset(level), len, h,
                       next.data());
        approx = next.head(len);
    }
    return approx;
}

Eigen::MatrixXd dwt_panel(const Eigen::MatrixXd& panel, const TransformPlan& plan) {
    Eigen::MatrixXd out(panel.rows(), panel.cols());
    for (Eigen::Index c = 0; c < panel.cols(); ++c) out.col(c) = dwt(panel.col(c), plan);
    return out;
}

Eigen::MatrixXd idwt_panel(const Eigen::MatrixXd& panel, const TransformPlan& plan) {
    Eigen::MatrixXd out(panel.rows(), panel.cols());
    for (Eigen::Index c = 0; c < panel.cols(); ++c) out.col(c) = idwt(panel.col(c), plan);
    return out;
}

Eigen::MatrixXd build_transform_matrix(const TransformPlan& plan) {
    constexpr int kMaxLength = 4096;
    if (plan.length() > kMaxLength)
        throw ResourceLimitError("build_transform_matrix: M = " + std::to_string(plan.length()) +
                                 " exceeds the " + std::to_string(kMaxLength) + " guard");
    const int m = plan.length();
    Eigen::MatrixXd w(m, m);
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(m);
    for (int j = 0; j < m; ++j) {
        unit(j) = 1.0;
        w.col(j) = dwt(unit, plan);
        unit(j) = 0.0;
    }
    return w;
}

double mad_sigma_level(const Eigen::VectorXd& coeffs, int level, const TransformPlan& plan) {
    if (coeffs.size() != plan.length())
        throw InvalidInputError("mad_sigma_level: coefficient length mismatch");
    const int offset = plan.detail_offset(level);  // validates the level
    const int len = plan.detail_length(level);
    Eigen::VectorXd abs_block = coeffs.segment(offset, len).cwiseAbs();
    return median(std::move(abs_block)) / 0.6745;
}

}  // namespace agfd
