#pragma once

#include <string>
#include <string_view>

#include "schlogl/linalg.hpp"

namespace schlogl {

/// Physical parameters of the one-species Schlögl network
///   A + 2X <-> 3X  (k1, k2),   B <-> X  (k3, k4)
/// together with the volume and the largest retained molecule count.
class SchloglSystem {
public:
    SchloglSystem(double k1, double k2, double k3, double k4, double a, double b, double volume,
                  int n_trunc);

    static SchloglSystem monostable(double volume, int n_trunc);
    static SchloglSystem bistable(double volume, int n_trunc);
    /// Looks up "monostable" or "bistable".
    static SchloglSystem preset(std::string_view name, double volume, int n_trunc);

    double k1() const { return k1_; }
    double k2() const { return k2_; }
    double k3() const { return k3_; }
    double k4() const { return k4_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double volume() const { return volume_; }
    int n_trunc() const { return n_trunc_; }

    SchloglSystem with_volume(double volume) const;
    SchloglSystem with_n_trunc(int n_trunc) const;

    /// k1 k4 a / (k2 k3 b); equals one under chemical detailed balance.
    double detailed_balance_ratio() const;
    bool is_equilibrium() const;

private:
    double k1_, k2_, k3_, k4_, a_, b_, volume_;
    int n_trunc_;
};

/// Truncated CME generator. entry(i, j) is the j -> i transition rate.
class GeneratorMatrix {
public:
    explicit GeneratorMatrix(RealMatrix entries);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const RealMatrix& entries() const { return entries_; }
    double operator()(int i, int j) const { return entries_(i, j); }

    /// Embeds into a larger zero matrix; the extra states are absorbing with
    /// rate zero, so the generator property is kept.
    GeneratorMatrix padded_to(int dim) const;

private:
    RealMatrix entries_;
};

double birth_rate(const SchloglSystem& sys, int n);
double death_rate(const SchloglSystem& sys, int n);
GeneratorMatrix build_generator(const SchloglSystem& sys);

/// Mass-action rate law dx/dt.
double deterministic_rhs(const SchloglSystem& sys, double x);

/// N_trunc such that the generator fills exactly n_qubits qubits.
inline int n_trunc_for_qubits(int n_qubits) { return (1 << n_qubits) - 1; }

/// Reads a JSON object with optional "preset" and any of
/// k1 k2 k3 k4 a b V N_trunc. Explicit keys override the preset.
SchloglSystem load_system_json(const std::string& text);
SchloglSystem load_system_file(const std::string& path);

}  // namespace schlogl
