#include "gspec/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gspec {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(cur);
    return out;
}

void expect_header(std::ifstream& in, const std::string& want,
                   const std::string& path) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != want)
        throw std::runtime_error("bad header in " + path + ": expected '" + want + "'");
}

}  // namespace

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_signal_csv(const std::string& path, const SampledSignal& f) {
    auto out = open_out(path);
    out << "index,t,re,im\n";
    for (int n = 0; n < f.grid.L; ++n)
        out << n << ',' << fmt_g(f.grid.time(n)) << ',' << fmt_g(f.samples[n].real())
            << ',' << fmt_g(f.samples[n].imag()) << '\n';
}

SampledSignal read_signal_csv(const std::string& path) {
    auto in = open_in(path);
    expect_header(in, "index,t,re,im", path);
    std::vector<double> ts;
    std::vector<cdouble> vals;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() != 4) throw std::runtime_error("bad row in " + path + ": " + line);
        ts.push_back(std::stod(f[1]));
        vals.emplace_back(std::stod(f[2]), std::stod(f[3]));
    }
    if (ts.size() < 2) throw std::runtime_error("too few samples in " + path);
    const double dt = ts[1] - ts[0];
    GridSpec grid(static_cast<int>(ts.size()), dt, ts[0]);
    for (size_t n = 0; n < ts.size(); ++n)
        if (std::abs(ts[n] - grid.time(static_cast<int>(n))) > 1e-9 * grid.period())
            throw std::runtime_error("non-uniform time axis in " + path);
    return SampledSignal(grid, std::move(vals));
}

void write_psfun_csv(const std::string& path, const PhaseSpaceFunction& F) {
    auto out = open_out(path);
    out << "ix,iw,x,omega,re,im\n";
    for (int ix = 0; ix < F.psgrid.Nx; ++ix)
        for (int iw = 0; iw < F.psgrid.Nw; ++iw) {
            const cdouble v = F.at(ix, iw);
            out << ix << ',' << iw << ',' << fmt_g(F.psgrid.xval(ix)) << ','
                << fmt_g(F.psgrid.wval(iw)) << ',' << fmt_g(v.real()) << ','
                << fmt_g(v.imag()) << '\n';
        }
}

void write_atoms_csv(const std::string& path, const AtomSet& atoms) {
    auto out = open_out(path);
    out << "x,omega\n";
    for (const auto& z : atoms.points)
        out << fmt_g(z.x) << ',' << fmt_g(z.omega) << '\n';
}

AtomSet read_atoms_csv(const std::string& path) {
    auto in = open_in(path);
    expect_header(in, "x,omega", path);
    AtomSet atoms;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() != 2) throw std::runtime_error("bad row in " + path + ": " + line);
        atoms.points.push_back(TFPoint{std::stod(f[0]), std::stod(f[1])});
    }
    if (atoms.points.empty()) throw std::runtime_error("no atoms in " + path);
    return atoms;
}

void write_opmatrix_csv(const std::string& path, const OperatorMatrix& S) {
    auto out = open_out(path);
    out << "row,col,re,im\n";
    const int n = S.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            out << i << ',' << j << ',' << fmt_g(S.entries(i, j).real()) << ','
                << fmt_g(S.entries(i, j).imag()) << '\n';
}

void write_sweep_csv(const std::string& path, const SweepResult& res) {
    auto out = open_out(path);
    out << "alpha,alpha_used,A,B,method,L\n";
    for (const auto& r : res.rows)
        out << fmt_g(r.alpha) << ',' << fmt_g(r.alpha_used) << ',' << fmt_g(r.A) << ','
            << fmt_g(r.B) << ',' << r.method << ',' << r.L << '\n';
}

void write_tradeoff_csv(const std::string& path, const TradeoffTable& tbl) {
    auto out = open_out(path);
    out << "epsilon,region,err_norm_a,h_norm_c,slope_err,slope_growth\n";
    for (const auto& r : tbl.rows) {
        const bool band = r.region == Region::frequency_band;
        out << fmt_g(r.epsilon) << ',' << region_name(r.region) << ','
            << fmt_g(r.err_norm_a) << ',' << fmt_g(r.h_norm_c) << ','
            << fmt_g(band ? tbl.slope_err_band : tbl.slope_err_ball) << ','
            << fmt_g(band ? tbl.slope_growth_band : tbl.slope_growth_ball) << '\n';
    }
}

}  // namespace gspec
