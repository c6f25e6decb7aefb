#pragma once

#include <string>
#include <vector>

#include "gspec/deform.hpp"
#include "gspec/gabor.hpp"
#include "gspec/modspace.hpp"
#include "gspec/types.hpp"
#include "gspec/weyl.hpp"

namespace gspec {

/// Shortest round-trip decimal (%.17g).
std::string fmt_g(double v);

void write_signal_csv(const std::string& path, const SampledSignal& f);
SampledSignal read_signal_csv(const std::string& path);

void write_psfun_csv(const std::string& path, const PhaseSpaceFunction& F);

void write_atoms_csv(const std::string& path, const AtomSet& atoms);
AtomSet read_atoms_csv(const std::string& path);

/// Upper triangle only: `row,col,re,im`.
void write_opmatrix_csv(const std::string& path, const OperatorMatrix& S);

void write_sweep_csv(const std::string& path, const SweepResult& res);
void write_tradeoff_csv(const std::string& path, const TradeoffTable& tbl);

}  // namespace gspec
