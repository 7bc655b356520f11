// SPDX-License-Identifier: Apache-2.0
//
// rctsec: randomized uplink pilot training against pilot spoofing and jamming
// Copyright (C) 2026 The rctsec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "rct/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rct/error.hpp"

namespace rct {

int SpectrumDecomposition::positive_rank() const
{
    int r = 0;
    for (const auto& c : positive)
        r += c.multiplicity;
    return r;
}

int SpectrumDecomposition::negative_rank() const
{
    int r = 0;
    for (const auto& c : negative)
        r += c.multiplicity;
    return r;
}

namespace {

std::vector<EigenCluster> cluster_side(std::vector<double> mags, double tol, double sign)
{
    std::sort(mags.begin(), mags.end());
    std::vector<EigenCluster> out;
    double sum = 0.0;
    int count = 0;
    double anchor = 0.0;
    for (double m : mags) {
        if (count > 0 && m - anchor <= tol * anchor) {
            sum += m;
            ++count;
            continue;
        }
        if (count > 0)
            out.push_back({sign * sum / count, count});
        anchor = m;
        sum = m;
        count = 1;
    }
    if (count > 0)
        out.push_back({sign * sum / count, count});
    return out;
}

// Incremental gamma-mixture weights for one side of the spectrum. The
// recursion w_k = (1/k) sum_i i gamma_i w_{k-i} with i gamma_i = sum_j m_j q_j^i
// is carried through one running sum per cluster, so w_k costs O(clusters).
class MixtureSeries {
public:
    explicit MixtureSeries(const std::vector<EigenCluster>& side)
    {
        smallest_ = std::abs(side.front().value);
        double log_c = 0.0;
        for (const auto& c : side) {
            const double ratio = smallest_ / std::abs(c.value);
            log_c += c.multiplicity * std::log(ratio);
            ratios_.push_back(1.0 - ratio);
            mult_.push_back(c.multiplicity);
            shape_ += c.multiplicity;
        }
        const double c0 = std::exp(log_c);
        require(c0 > std::numeric_limits<double>::min(), ErrorCode::TruncationFailure,
                "eigenvalue spread too large for the gamma series");
        running_.assign(ratios_.size(), 0.0);
        weights_.push_back(c0);
        sum_ = c0;
    }

    double weight(int k) const { return weights_[k]; }
    int size() const { return static_cast<int>(weights_.size()); }
    int shape() const { return shape_; }
    double scale() const { return smallest_; }
    double remaining() const { return std::max(0.0, 1.0 - sum_); }

    void extend()
    {
        const int k = size();
        const double last = weights_.back();
        double acc = 0.0;
        for (std::size_t j = 0; j < ratios_.size(); ++j) {
            running_[j] = ratios_[j] * (last + running_[j]);
            acc += mult_[j] * running_[j];
        }
        const double w = acc / k;
        weights_.push_back(w);
        sum_ += w;
    }

private:
    double smallest_ = 0.0;
    int shape_ = 0;
    std::vector<double> ratios_;
    std::vector<int> mult_;
    std::vector<double> running_;  // sum_{i=1}^{k} q_j^i w_{k-i}
    std::vector<double> weights_;
    double sum_ = 0.0;
};

// Arrival count N of a Poisson process with mean spacing s over the window
// t + B, where B is the negative-side sum. Over a Gamma(1, |lambda|) stretch
// the count is geometric with success s / (s + |lambda|), so N is a
// Poisson(t / s) count passed through one geometric convolution stage per
// unit of multiplicity. The pmf is produced one index at a time.
class WindowCount {
public:
    WindowCount(double x, double s, const std::vector<EigenCluster>& window) : x_(x)
    {
        log_x_ = x > 0.0 ? std::log(x) : 0.0;
        for (const auto& c : window)
            for (int i = 0; i < c.multiplicity; ++i)
                stages_.push_back({s / (s + std::abs(c.value)), 0.0});
    }

    int size() const { return count_; }
    double survival() const { return std::max(0.0, 1.0 - cdf_); }  // P{N >= size()}

    void next()
    {
        const int l = count_++;
        double f = 0.0;
        if (x_ == 0.0)
            f = l == 0 ? 1.0 : 0.0;
        else
            f = std::exp(-x_ + l * log_x_ - std::lgamma(l + 1.0));
        for (auto& st : stages_) {
            st.out = st.p * f + (1.0 - st.p) * st.out;
            f = st.out;
        }
        cdf_ += f;
    }

private:
    struct Stage {
        double p;
        double out;
    };
    double x_;
    double log_x_ = 0.0;
    std::vector<Stage> stages_;
    int count_ = 0;
    double cdf_ = 0.0;
};

TailResult single_side(const SpectrumDecomposition& s, double t, double tol, int max_terms)
{
    TailResult out;
    if (t <= 0.0) {
        out.tail = 1.0;
        out.lower = 0.0;
        return out;
    }
    MixtureSeries series(s.positive);
    const double x = t / series.scale();
    double cdf = 0.0;
    for (int k = 0;; ++k) {
        if (k > 0)
            series.extend();
        const double w = series.weight(k);
        cdf += w * gamma_p(series.shape() + k, x);
        const double bound = series.remaining() * gamma_p(series.shape() + k + 1, x);
        if (bound < tol) {
            out.error_bound = bound;
            out.terms_positive = k + 1;
            break;
        }
        if (k + 1 >= max_terms)
            fail(ErrorCode::TruncationFailure, "gamma series did not converge within the term cap");
    }
    cdf = std::clamp(cdf, 0.0, 1.0);
    out.lower = cdf;
    out.tail = 1.0 - cdf;
    return out;
}

// P{A - B >= t} with A, B the positive and negative parts. Expanding A in its
// gamma mixture at scale s1, {A <= t + B} is the event that the s1-process
// makes at least rho1 + k arrivals in t + B, so the negative side enters only
// through the window count and its own series sums out in closed form.
TailResult mixed_oriented(const SpectrumDecomposition& s, double t, double tol, int max_terms)
{
    MixtureSeries pos(s.positive);
    const double s1 = pos.scale();
    WindowCount N(t / s1, s1, s.negative);
    const int rho = pos.shape();
    const auto survival = [&N](int a) {
        while (N.size() < a)
            N.next();
        return N.survival();
    };
    double lower = 0.0;
    TailResult out;
    for (int k = 0;; ++k) {
        if (k > 0)
            pos.extend();
        lower += pos.weight(k) * survival(rho + k);
        const double bound = pos.remaining() * survival(rho + k + 1);
        if (bound < tol) {
            out.error_bound = bound;
            out.terms_positive = k + 1;
            out.terms_negative = N.size();
            break;
        }
        if (k + 1 >= max_terms)
            fail(ErrorCode::TruncationFailure, "gamma series did not converge within the term cap");
    }
    out.lower = std::clamp(lower, 0.0, 1.0);
    out.tail = 1.0 - out.lower;
    return out;
}

double side_mass(const std::vector<EigenCluster>& side)
{
    double m = 0.0;
    for (const auto& c : side)
        m += std::abs(c.value) * c.multiplicity;
    return m;
}

TailResult mixed_sides(const SpectrumDecomposition& s, double t, double tol, int max_terms)
{
    // At t = 0 either side can carry the series; the window count grows like
    // E[window] / (smallest eigenvalue of the series side), so take the cheaper.
    if (t == 0.0) {
        const double cost_pos = side_mass(s.negative) / std::abs(s.positive.front().value);
        const double cost_neg = side_mass(s.positive) / std::abs(s.negative.front().value);
        if (cost_neg < cost_pos) {
            SpectrumDecomposition flipped;
            for (const auto& c : s.negative)
                flipped.positive.push_back({-c.value, c.multiplicity});
            for (const auto& c : s.positive)
                flipped.negative.push_back({-c.value, c.multiplicity});
            TailResult r = mixed_oriented(flipped, 0.0, tol, max_terms);
            std::swap(r.tail, r.lower);
            std::swap(r.terms_positive, r.terms_negative);
            return r;
        }
    }
    return mixed_oriented(s, t, tol, max_terms);
}

// Removes the smallest-magnitude clusters while their total magnitude stays
// within budget * (largest magnitude). What remains keeps a gamma component of
// scale lambda_max, so its density is at most 1 / lambda_max and the tail moves
// by at most E|dropped part| / lambda_max, which is the returned bound.
double deflate(SpectrumDecomposition& s, double budget)
{
    struct Ref {
        double mag;
        bool positive;
    };
    std::vector<Ref> all;
    double top = 0.0;
    for (const auto& c : s.positive) {
        all.push_back({std::abs(c.value) * c.multiplicity, true});
        top = std::max(top, std::abs(c.value));
    }
    for (const auto& c : s.negative) {
        all.push_back({std::abs(c.value) * c.multiplicity, false});
        top = std::max(top, std::abs(c.value));
    }
    if (top == 0.0)
        return 0.0;
    // Both sides are sorted by ascending magnitude, so the drop set is a prefix
    // of each side. Merge the two prefixes greedily.
    std::size_t ip = 0;
    std::size_t in = 0;
    double dropped = 0.0;
    const double allowance = budget * top;
    while (true) {
        const double np = ip < s.positive.size() ? std::abs(s.positive[ip].value) * s.positive[ip].multiplicity
                                                 : INFINITY;
        const double nn = in < s.negative.size() ? std::abs(s.negative[in].value) * s.negative[in].multiplicity
                                                 : INFINITY;
        const bool take_pos = np <= nn;
        const double next = take_pos ? np : nn;
        if (!std::isfinite(next) || dropped + next > allowance)
            break;
        dropped += next;
        (take_pos ? ip : in) += 1;
    }
    s.positive.erase(s.positive.begin(), s.positive.begin() + static_cast<std::ptrdiff_t>(ip));
    s.negative.erase(s.negative.begin(), s.negative.begin() + static_cast<std::ptrdiff_t>(in));
    return dropped / top;
}

} // namespace

SpectrumDecomposition spectrum_from_eigenvalues(std::vector<double> eigenvalues, double cluster_tol)
{
    SpectrumDecomposition out;
    double max_abs = 0.0;
    for (double v : eigenvalues) {
        require(std::isfinite(v), ErrorCode::InvalidArgument, "eigenvalues must be finite");
        max_abs = std::max(max_abs, std::abs(v));
    }
    const double floor = 1e-10 * max_abs;
    std::vector<double> pos;
    std::vector<double> neg;
    for (double v : eigenvalues) {
        if (max_abs == 0.0 || std::abs(v) <= floor)
            ++out.dropped_zero_count;
        else if (v > 0.0)
            pos.push_back(v);
        else
            neg.push_back(-v);
    }
    out.positive = cluster_side(std::move(pos), cluster_tol, 1.0);
    out.negative = cluster_side(std::move(neg), cluster_tol, -1.0);
    return out;
}

SpectrumDecomposition spectrum_decompose(const CMat& omega, double cluster_tol)
{
    require(omega.rows() == omega.cols() && omega.rows() > 0, ErrorCode::InvalidDims, "form must be square");
    const RVec values = hermitian_eig(omega).values;
    return spectrum_from_eigenvalues(std::vector<double>(values.data(), values.data() + values.size()),
                                     cluster_tol);
}

std::vector<double> gamma_mixture_weights(const std::vector<EigenCluster>& side, int terms)
{
    require(!side.empty(), ErrorCode::InvalidArgument, "empty spectrum side");
    require(terms >= 1, ErrorCode::InvalidArgument, "need at least one term");
    MixtureSeries series(side);
    while (series.size() < terms)
        series.extend();
    std::vector<double> w(terms);
    for (int k = 0; k < terms; ++k)
        w[k] = series.weight(k);
    return w;
}

TailResult quadform_tail(const SpectrumDecomposition& spectrum, double t, const QuadformOptions& opts)
{
    require(t >= 0.0 && std::isfinite(t), ErrorCode::InvalidArgument, "threshold must be finite and >= 0");
    require(opts.tol > 0.0 && opts.max_terms >= 1, ErrorCode::InvalidArgument, "invalid series options");
    if (spectrum.positive.empty() && spectrum.negative.empty()) {
        TailResult out;
        out.zero_spectrum = true;
        out.tail = t == 0.0 ? 1.0 : 0.0;
        out.lower = 1.0 - out.tail;
        return out;
    }
    // Half the error budget may go to discarding negligible eigenvalues, the
    // other half to series truncation.
    SpectrumDecomposition s = spectrum;
    const double deflated = deflate(s, opts.tol / 2.0);
    TailResult out;
    if (s.positive.empty()) {
        out.tail = 0.0;
        out.lower = 1.0;
    } else if (s.negative.empty()) {
        out = single_side(s, t, opts.tol / 2.0, opts.max_terms);
    } else {
        out = mixed_sides(s, t, opts.tol / 2.0, opts.max_terms);
    }
    out.error_bound += deflated;
    return out;
}

TailResult quadform_tail(const CMat& omega, double t, const QuadformOptions& opts)
{
    return quadform_tail(spectrum_decompose(omega), t, opts);
}

std::vector<McEstimate> quadform_tail_mc(const CMat& omega, std::span<const double> ts, long long n_samples,
                                         Rng& rng)
{
    require(n_samples >= 1, ErrorCode::InvalidArgument, "need at least one sample");
    require(omega.rows() == omega.cols(), ErrorCode::InvalidDims, "form must be square");
    const Eigen::Index d = omega.rows();
    const CMat H = hermitian_part(omega);
    std::vector<long long> hits(ts.size(), 0);
    constexpr long long kChunk = 4096;
    CMat G(d, kChunk);
    for (long long done = 0; done < n_samples; done += kChunk) {
        const long long n = std::min(kChunk, n_samples - done);
        for (long long j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < d; ++i)
                G(i, j) = rng.cn(1.0);
        const CMat V = H * G.leftCols(n);
        for (long long j = 0; j < n; ++j) {
            const double q = G.col(j).head(d).dot(V.col(j)).real();
            for (std::size_t k = 0; k < ts.size(); ++k)
                if (q >= ts[k])
                    ++hits[k];
        }
    }
    std::vector<McEstimate> out(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double p = static_cast<double>(hits[k]) / static_cast<double>(n_samples);
        out[k] = {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples))};
    }
    return out;
}

McEstimate quadform_tail_mc(const CMat& omega, double t, long long n_samples, Rng& rng)
{
    const double ts[] = {t};
    return quadform_tail_mc(omega, std::span<const double>(ts), n_samples, rng).front();
}

} // namespace rct
