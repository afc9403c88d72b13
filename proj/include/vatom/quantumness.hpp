#pragma once

// l1-norm coherence and the Hilbert-Schmidt-speed witness of non-Markovian
// information backflow.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "vatom/numerics.hpp"
#include "vatom/state.hpp"

namespace vatom {

// One named observable sampled on a uniform time grid.
struct ObservableTrack {
    std::string name;
    std::vector<double> times;
    std::vector<double> values;

    double dt() const;
    void validate() const; // uniform grid, finite values
};

// Sum of |rho_ij| over i != j.
double coherence_l1(const DensityMatrix3& rho);

// sqrt( Tr[(d rho / d phi)^2] / 2 ).
double hss(const Eigen::Matrix3cd& drho_phi);

struct HssWitness {
    ObservableTrack chi;            // d HSS / dt on the track's grid
    double backflow_integral = 0.0; // integral of max(chi, 0) dt; an added
                                    // summary, flagged in output metadata
};

// chi(t) > 0 marks the intervals where information flows back to the atom.
HssWitness hss_witness(const ObservableTrack& hss_track);

} // namespace vatom
