#include "parabolica/parabolic.hpp"

#include "parabolica/errors.hpp"

#include <algorithm>

namespace parabolica {

bool ParabolicData::in_levi(std::size_t i) const {
    if (i >= in_levi_.size()) throw IndexOutOfRange("simple root index out of range");
    return in_levi_[i];
}

Weight sum_of_roots(const std::vector<RootVector>& roots, const RootSystem& rs) {
    Weight w = Weight::zero(rs.rank());
    for (const auto& r : roots) w += root_as_weight(r, rs);
    return w;
}

ParabolicData build_parabolic(RootSystem rs, std::vector<std::size_t> levi) {
    const std::size_t n = rs.rank();
    std::sort(levi.begin(), levi.end());
    if (std::adjacent_find(levi.begin(), levi.end()) != levi.end())
        throw InvalidArgument("duplicate index in the parabolic subset");
    for (auto i : levi)
        if (i >= n)
            throw IndexOutOfRange("simple root index " + std::to_string(i + 1) + " exceeds rank " +
                                  std::to_string(n));
    if (levi.size() == n)
        throw FullSetNotParabolic("I = Delta gives P = G and a point as flag variety");

    ParabolicData p(std::move(rs));
    const auto& rsr = p.rs_;
    p.levi_ = std::move(levi);
    p.in_levi_.assign(n, false);
    for (auto i : p.levi_) p.in_levi_[i] = true;
    for (std::size_t i = 0; i < n; ++i)
        if (!p.in_levi_[i]) p.complement_.push_back(i);

    const auto& c = rsr.cartan();
    p.levi_cartan_.assign(p.levi_.size(), std::vector<int>(p.levi_.size()));
    for (std::size_t a = 0; a < p.levi_.size(); ++a)
        for (std::size_t b = 0; b < p.levi_.size(); ++b) p.levi_cartan_[a][b] = c[p.levi_[a]][p.levi_[b]];
    p.levi_det_ = determinant(p.levi_cartan_);
    ensure(p.levi_det_ > 0, "Levi Cartan matrix is not of finite type");

    for (const auto& r : rsr.positive_roots()) {
        bool outside = false;
        for (std::size_t i = 0; i < n; ++i)
            if (r.coords[i] != 0 && !p.in_levi_[i]) outside = true;
        (outside ? p.phi_I_plus_ : p.levi_roots_).push_back(r);
    }

    p.delta_p_ = sum_of_roots(p.phi_I_plus_, rsr);
    for (auto i : p.levi_) ensure(p.delta_p_.fw[i] == 0, "delta_P must vanish on I");
    return p;
}

bool is_dominant_for_levi(const Weight& lambda, const ParabolicData& p) {
    if (lambda.size() != p.rank()) throw DimensionMismatch("weight length differs from the rank");
    return std::all_of(p.levi_indices().begin(), p.levi_indices().end(),
                       [&](std::size_t i) { return lambda.fw[i] >= 0; });
}

bool is_supported_off_levi(const Weight& lambda, const ParabolicData& p) {
    if (lambda.size() != p.rank()) throw DimensionMismatch("weight length differs from the rank");
    return std::all_of(p.levi_indices().begin(), p.levi_indices().end(),
                       [&](std::size_t i) { return lambda.fw[i] == 0; });
}

WeightSplit decompose_weight(const Weight& lambda, const ParabolicData& p) {
    if (lambda.size() != p.rank()) throw DimensionMismatch("weight length differs from the rank");
    if (!lambda.is_integral()) throw NotIntegral("highest weight " + to_string(lambda) + " is not integral");
    if (!is_dominant_for_levi(lambda, p))
        throw NotDominantForLevi("highest weight " + to_string(lambda) +
                                 " has a negative coordinate on I");
    WeightSplit s{Weight::zero(p.rank()), Weight::zero(p.rank())};
    for (std::size_t i = 0; i < p.rank(); ++i) (p.in_levi(i) ? s.lambda_s : s.lambda_c).fw[i] = lambda.fw[i];
    return s;
}

}  // namespace parabolica
