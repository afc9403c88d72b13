#include "vatom/quantumness.hpp"

#include <cmath>

namespace vatom {

double ObservableTrack::dt() const {
    if (times.size() < 2) throw InvalidInputError("ObservableTrack: need at least 2 samples");
    return times[1] - times[0];
}

void ObservableTrack::validate() const {
    if (times.size() != values.size())
        throw InvalidInputError("ObservableTrack: times/values size mismatch");
    if (times.size() < 3) throw InvalidInputError("ObservableTrack: need at least 3 samples");
    const double step = dt();
    if (!(step > 0.0)) throw InvalidInputError("ObservableTrack: grid must be increasing");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (std::abs(times[i] - times[i - 1] - step) > 1e-12 * std::max(1.0, std::abs(times[i])))
            throw InvalidInputError("ObservableTrack: grid must be uniform");
    }
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidInputError("ObservableTrack: non-finite value");
}

double coherence_l1(const DensityMatrix3& rho) {
    double sum = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) sum += std::abs(rho.rho(i, j));
    return sum;
}

double hss(const Eigen::Matrix3cd& drho_phi) {
    // Hermitian input: Tr[X^2] = squared Frobenius norm.
    return std::sqrt(0.5 * drho_phi.squaredNorm());
}

HssWitness hss_witness(const ObservableTrack& hss_track) {
    hss_track.validate();

    HssWitness out;
    out.chi.name = "chi";
    out.chi.times = hss_track.times;
    out.chi.values = derivative_on_grid(hss_track.values, hss_track.dt());

    const double step = hss_track.dt();
    double acc = 0.0;
    for (std::size_t i = 1; i < out.chi.values.size(); ++i) {
        const double a = std::max(out.chi.values[i - 1], 0.0);
        const double b = std::max(out.chi.values[i], 0.0);
        acc += 0.5 * (a + b) * step;
    }
    out.backflow_integral = acc;
    return out;
}

} // namespace vatom
