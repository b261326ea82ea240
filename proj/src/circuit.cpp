#include "schlogl/circuit.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "schlogl/errors.hpp"
#include "schlogl/hermitize.hpp"
#include "schlogl/kernels.hpp"

namespace schlogl {

namespace {

void check(const StateVector& s, int q) {
    if (q < 0 || q >= s.n_qubits()) {
        throw DomainError("qubit index " + std::to_string(q) + " out of range");
    }
}

kernels::Mat2 ry_matrix(double t) {
    const double c = std::cos(t / 2);
    const double sn = std::sin(t / 2);
    return {cplx(c, 0), cplx(-sn, 0), cplx(sn, 0), cplx(c, 0)};
}

kernels::Mat2 rz_matrix(double t) {
    return {std::exp(cplx(0, -t / 2)), cplx(0, 0), cplx(0, 0), std::exp(cplx(0, t / 2))};
}

constexpr kernels::Mat2 kX = {cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)};

}  // namespace

void apply_ry(StateVector& s, int q, double theta) {
    check(s, q);
    kernels::apply_1q(s.mutable_amplitudes(), ry_matrix(theta), q);
}

void apply_rz(StateVector& s, int q, double theta) {
    check(s, q);
    kernels::apply_1q(s.mutable_amplitudes(), rz_matrix(theta), q);
}

void apply_x(StateVector& s, int q) {
    check(s, q);
    kernels::apply_1q(s.mutable_amplitudes(), kX, q);
}

void apply_h(StateVector& s, int q) {
    check(s, q);
    const double r = 1.0 / std::sqrt(2.0);
    kernels::apply_1q(s.mutable_amplitudes(), {cplx(r, 0), cplx(r, 0), cplx(r, 0), cplx(-r, 0)}, q);
}

void apply_cnot(StateVector& s, int control, int target) {
    check(s, control);
    check(s, target);
    if (control == target) throw DomainError("CNOT control equals target");
    kernels::apply_controlled_1q(s.mutable_amplitudes(), kX, control, target);
}

void apply_controlled_phase(StateVector& s, int control, int target, double phi) {
    check(s, control);
    check(s, target);
    if (control == target) throw DomainError("controlled phase control equals target");
    kernels::apply_controlled_1q(s.mutable_amplitudes(),
                                 {cplx(1, 0), cplx(0, 0), cplx(0, 0), std::exp(cplx(0, phi))}, control,
                                 target);
}

void apply_swap(StateVector& s, int a, int b) {
    check(s, a);
    check(s, b);
    if (a == b) return;
    apply_cnot(s, a, b);
    apply_cnot(s, b, a);
    apply_cnot(s, a, b);
}

void apply_controlled_unitary(StateVector& s, const ComplexMatrix& u, std::span<const int> targets,
                              std::span<const int> controls) {
    if (targets.empty()) throw DomainError("controlled unitary needs at least one target");
    if (u.rows() != (Eigen::Index{1} << targets.size()) || u.cols() != u.rows()) {
        throw DomainError("unitary payload size does not match the target count");
    }
    if (!is_unitary(u)) throw DomainError("controlled-unitary payload is not unitary");
    std::uint64_t used = 0;
    auto claim = [&](int q) {
        check(s, q);
        const std::uint64_t bit = std::uint64_t{1} << q;
        if (used & bit) throw DomainError("qubit used twice in controlled unitary");
        used |= bit;
    };
    for (int q : targets) claim(q);
    for (int q : controls) claim(q);
    kernels::apply_controlled_unitary(s.mutable_amplitudes(), u, targets, controls);
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) throw DomainError("circuit needs 1..30 qubits");
}

void Circuit::check_qubit(int q) const {
    if (q < 0 || q >= n_qubits_) throw DomainError("qubit index " + std::to_string(q) + " out of range");
}

int Circuit::add_ry(int q) {
    check_qubit(q);
    ops_.push_back({.kind = GateKind::RY, .target = q, .param = n_params_});
    return n_params_++;
}

int Circuit::add_rz(int q) {
    check_qubit(q);
    ops_.push_back({.kind = GateKind::RZ, .target = q, .param = n_params_});
    return n_params_++;
}

void Circuit::add_x(int q) {
    check_qubit(q);
    ops_.push_back({.kind = GateKind::X, .target = q});
}

void Circuit::add_h(int q) {
    check_qubit(q);
    ops_.push_back({.kind = GateKind::H, .target = q});
}

void Circuit::add_cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) throw DomainError("CNOT control equals target");
    ops_.push_back({.kind = GateKind::CNOT, .target = target, .control = control});
}

void Circuit::add_cphase(int control, int target, double phi) {
    check_qubit(control);
    check_qubit(target);
    ops_.push_back({.kind = GateKind::CPhase, .target = target, .control = control, .angle = phi});
}

void Circuit::add_swap(int a, int b) {
    check_qubit(a);
    check_qubit(b);
    ops_.push_back({.kind = GateKind::Swap, .target = b, .control = a});
}

void Circuit::add_controlled_unitary(std::shared_ptr<const ComplexMatrix> u, std::vector<int> targets,
                                     std::vector<int> controls) {
    for (int q : targets) check_qubit(q);
    for (int q : controls) check_qubit(q);
    if (!u || u->rows() != (Eigen::Index{1} << targets.size())) {
        throw DomainError("unitary payload size does not match the target count");
    }
    if (!is_unitary(*u)) throw DomainError("controlled-unitary payload is not unitary");
    ops_.push_back({.kind = GateKind::ControlledUnitary,
                    .unitary = std::move(u),
                    .targets = std::move(targets),
                    .controls = std::move(controls)});
}

void Circuit::run(StateVector& s, std::span<const double> params) const {
    if (s.n_qubits() != n_qubits_) throw DomainError("state and circuit qubit counts differ");
    if (static_cast<int>(params.size()) != n_params_) {
        throw DomainError("expected " + std::to_string(n_params_) + " parameters, got " +
                          std::to_string(params.size()));
    }
    auto amps = s.mutable_amplitudes();
    for (const GateOp& op : ops_) {
        switch (op.kind) {
            case GateKind::RY:
                kernels::apply_1q(amps, ry_matrix(params[static_cast<std::size_t>(op.param)]), op.target);
                break;
            case GateKind::RZ:
                kernels::apply_1q(amps, rz_matrix(params[static_cast<std::size_t>(op.param)]), op.target);
                break;
            case GateKind::X: apply_x(s, op.target); break;
            case GateKind::H: apply_h(s, op.target); break;
            case GateKind::CNOT: kernels::apply_controlled_1q(amps, kX, op.control, op.target); break;
            case GateKind::CPhase: apply_controlled_phase(s, op.control, op.target, op.angle); break;
            case GateKind::Swap: apply_swap(s, op.control, op.target); break;
            case GateKind::ControlledUnitary:
                kernels::apply_controlled_unitary(amps, *op.unitary, op.targets, op.controls);
                break;
        }
    }
}

StateVector Circuit::run_from_zero(std::span<const double> params) const {
    StateVector s(n_qubits_);
    run(s, params);
    return s;
}

std::string Circuit::to_text() const {
    std::ostringstream os;
    os.precision(17);
    for (const GateOp& op : ops_) {
        switch (op.kind) {
            case GateKind::RY: os << "ry q" << op.target << " p" << op.param; break;
            case GateKind::RZ: os << "rz q" << op.target << " p" << op.param; break;
            case GateKind::X: os << "x q" << op.target; break;
            case GateKind::H: os << "h q" << op.target; break;
            case GateKind::CNOT: os << "cx q" << op.control << " q" << op.target; break;
            case GateKind::CPhase: os << "cp(" << op.angle << ") q" << op.control << " q" << op.target; break;
            case GateKind::Swap: os << "swap q" << op.control << " q" << op.target; break;
            case GateKind::ControlledUnitary:
                os << "cu" << op.unitary->rows();
                for (int c : op.controls) os << " c" << c;
                for (int t : op.targets) os << " q" << t;
                break;
        }
        os << '\n';
    }
    return os.str();
}

int AnsatzSpec::n_params() const {
    const int per_layer = rotation == Rotation::RY ? n_qubits : 2 * n_qubits;
    return per_layer * (reps + 1);
}

Circuit build_ansatz(const AnsatzSpec& spec) {
    if (spec.reps < 1) throw DomainError("ansatz reps must be >= 1");
    Circuit c(spec.n_qubits);
    auto rotations = [&] {
        for (int q = 0; q < spec.n_qubits; ++q) c.add_ry(q);
        if (spec.rotation == Rotation::RY_RZ) {
            for (int q = 0; q < spec.n_qubits; ++q) c.add_rz(q);
        }
    };
    for (int r = 0; r < spec.reps; ++r) {
        rotations();
        for (int q = 0; q + 1 < spec.n_qubits; ++q) c.add_cnot(q, q + 1);
    }
    rotations();
    return c;
}

double expectation(const StateVector& s, const PauliSum& p) {
    if (s.n_qubits() != p.n_qubits()) throw DomainError("state and operator qubit counts differ");
    double e = 0.0;
    for (const auto& t : p.terms()) {
        e += t.coefficient * kernels::pauli_expectation(s.amplitudes(), to_mask(t.string)).real();
    }
    return e;
}

std::map<std::uint64_t, std::uint64_t> sample(const StateVector& s, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw DomainError("shots must be >= 1");
    const std::vector<double> probs = s.probabilities();
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::uint64_t> dist(probs.begin(), probs.end());
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t i = 0; i < shots; ++i) ++counts[dist(rng)];
    return counts;
}

}  // namespace schlogl
