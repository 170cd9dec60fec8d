#pragma once

// Text output: CSV tables and JSON records. Every floating-point value is
// written with 12 significant digits and a '.' decimal separator regardless
// of locale; infinities are written as "inf" / "-inf".

#include <iosfwd>
#include <span>
#include <string>

#include "superfluid/bethe.hpp"
#include "superfluid/condensate.hpp"
#include "superfluid/dispersion.hpp"
#include "superfluid/instability.hpp"
#include "superfluid/landau.hpp"
#include "superfluid/thermo.hpp"

namespace superfluid::io {

std::string format_number(double value);

/// Header: rho,c,gamma,e,P,kappa0,method
void write_eos_csv(std::ostream& out, std::span<const thermo::EosPoint> points);

/// Header: branch,rho,k,epsilon
void write_dispersion_csv(std::ostream& out, const DispersionBranch& curve);

/// Header: R,T1,T2,T3,dE
void write_increment_csv(std::ostream& out, std::span<const instability::EnergyIncrement> rows);

/// Header: r,theta,z,re,im,j_r,j_theta,j_z
void write_field_csv(std::ostream& out, const condensate::CondensateField& field,
                     const condensate::CondensateObservables& observables);

/// {"rho","c","branch","v_c","v_s_slope","v_s_kappa","kappa0","checks":[...]}
std::string consistency_json(const landau::ConsistencyReport& report);

/// {"dimension","drift_v","p1","p2","expected_p1","expected_p2","rows":[...]}
std::string scaling_json(const instability::ScalingFit& fit, int dimension, double drift_v);

std::string bethe_state_json(const bethe::BetheState& state);

}  // namespace superfluid::io
