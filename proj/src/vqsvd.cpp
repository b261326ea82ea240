#include "schlogl/vqsvd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "json.hpp"
#include "schlogl/csv.hpp"
#include "schlogl/errors.hpp"
#include "schlogl/hermitize.hpp"
#include "schlogl/kernels.hpp"
#include "schlogl/oracle.hpp"
#include "schlogl/optimize.hpp"
#include "schlogl/variational.hpp"

namespace schlogl {

namespace {

using Columns = std::vector<std::vector<cplx>>;

kernels::Mat2 rotation(GateKind kind, double t) {
    const double c = std::cos(t / 2);
    const double s = std::sin(t / 2);
    if (kind == GateKind::RY) return {cplx(c, 0), cplx(-s, 0), cplx(s, 0), cplx(c, 0)};
    return {cplx(c, -s), cplx(0, 0), cplx(0, 0), cplx(c, s)};
}

kernels::Mat2 adjoint(const kernels::Mat2& m) {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

constexpr kernels::Mat2 kX = {cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)};

void apply_op(std::vector<cplx>& v, const GateOp& op, std::span<const double> theta, bool inverse) {
    switch (op.kind) {
        case GateKind::RY:
        case GateKind::RZ: {
            const auto m = rotation(op.kind, theta[static_cast<std::size_t>(op.param)]);
            kernels::apply_1q(v, inverse ? adjoint(m) : m, op.target);
            break;
        }
        case GateKind::CNOT: kernels::apply_controlled_1q(v, kX, op.control, op.target); break;
        default: throw DomainError("VQSVD ansatz supports RY, RZ and CNOT only");
    }
}

Columns run_columns(const Circuit& c, std::span<const double> theta, int rank) {
    const std::size_t d = std::size_t{1} << c.n_qubits();
    Columns cols(static_cast<std::size_t>(rank), std::vector<cplx>(d, cplx(0, 0)));
    for (int i = 0; i < rank; ++i) {
        auto& v = cols[static_cast<std::size_t>(i)];
        v[static_cast<std::size_t>(i)] = 1.0;
        for (const GateOp& op : c.ops()) apply_op(v, op, theta, false);
    }
    return cols;
}

double re_dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (std::conj(a[k]) * b[k]).real();
    return s;
}

// f = sum_i Re<y_i| C |i> for the circuit C(theta). Sweeps the gates
// backwards, undoing each one on both the forward states and the targets,
// and evaluates the +-pi shifted gate in place.
double register_gradient(const Circuit& c, std::span<const double> theta, Columns fwd, Columns y,
                         std::span<double> grad) {
    double f = 0.0;
    for (std::size_t i = 0; i < fwd.size(); ++i) f += re_dot(y[i], fwd[i]);
    const auto& ops = c.ops();
    std::vector<cplx> tmp;
    for (std::size_t k = ops.size(); k-- > 0;) {
        const GateOp& op = ops[k];
        for (auto& v : fwd) apply_op(v, op, theta, true);
        if (op.param >= 0) {
            const double t = theta[static_cast<std::size_t>(op.param)];
            const auto plus = rotation(op.kind, t + std::numbers::pi);
            const auto minus = rotation(op.kind, t - std::numbers::pi);
            double fp = 0.0, fm = 0.0;
            for (std::size_t i = 0; i < fwd.size(); ++i) {
                tmp = fwd[i];
                kernels::apply_1q(tmp, plus, op.target);
                fp += re_dot(y[i], tmp);
                tmp = fwd[i];
                kernels::apply_1q(tmp, minus, op.target);
                fm += re_dot(y[i], tmp);
            }
            grad[static_cast<std::size_t>(op.param)] = 0.25 * (fp - fm);
        }
        for (auto& v : y) apply_op(v, op, theta, true);
    }
    return f;
}

std::vector<cplx> mat_vec(const ComplexMatrix& m, const std::vector<cplx>& v, double scale) {
    std::vector<cplx> out(v.size(), cplx(0, 0));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        cplx acc(0, 0);
        for (Eigen::Index k = 0; k < m.cols(); ++k) acc += m(r, k) * v[static_cast<std::size_t>(k)];
        out[static_cast<std::size_t>(r)] = scale * acc;
    }
    return out;
}

}  // namespace

AnsatzSpec vqsvd_ansatz(int n_qubits, int circuit_depth) {
    if (circuit_depth < 2) throw DomainError("circuit_depth must be >= 2");
    return {n_qubits, circuit_depth - 1, Rotation::RY_RZ, Entanglement::Linear};
}

VQSVDResult vqsvd_decompose(const ComplexMatrix& m, const VQSVDConfig& cfg) {
    const auto dim = static_cast<std::size_t>(m.rows());
    if (m.rows() != m.cols() || !is_power_of_two(dim) || dim < 2) {
        throw DomainError("VQSVD needs a square matrix of power-of-two dimension >= 2");
    }
    if (cfg.rank < 1 || static_cast<std::size_t>(cfg.rank) > dim) throw DomainError("rank outside [1, dim]");
    if (static_cast<int>(cfg.weights.size()) != cfg.rank) throw DomainError("weights must have rank entries");
    for (std::size_t i = 0; i < cfg.weights.size(); ++i) {
        if (!(cfg.weights[i] > 0) || (i > 0 && !(cfg.weights[i] < cfg.weights[i - 1]))) {
            throw DomainError("weights must be positive and strictly descending");
        }
    }
    if (cfg.iterations < 1) throw DomainError("iterations must be >= 1");

    const int n = log2_exact(dim);
    const Circuit circ = build_ansatz(vqsvd_ansatz(n, cfg.circuit_depth));
    const std::size_t np = static_cast<std::size_t>(circ.n_params());
    const ComplexMatrix m_adj = m.adjoint();
    const int rank = cfg.rank;

    // x = [alpha (left register), beta (right register)]; minimize -f.
    const Objective obj = [&](std::span<const double> x, std::span<double> g) {
        const auto alpha = x.subspan(0, np);
        const auto beta = x.subspan(np, np);
        const Columns a = run_columns(circ, alpha, rank);
        const Columns b = run_columns(circ, beta, rank);
        Columns ya(static_cast<std::size_t>(rank)), yb(static_cast<std::size_t>(rank));
        for (int i = 0; i < rank; ++i) {
            const double w = cfg.weights[static_cast<std::size_t>(i)];
            ya[static_cast<std::size_t>(i)] = mat_vec(m, b[static_cast<std::size_t>(i)], w);
            yb[static_cast<std::size_t>(i)] = mat_vec(m_adj, a[static_cast<std::size_t>(i)], w);
        }
        const double f = register_gradient(circ, alpha, a, std::move(ya), g.subspan(0, np));
        register_gradient(circ, beta, b, std::move(yb), g.subspan(np, np));
        for (double& v : g) v = -v;
        return -f;
    };

    std::vector<double> x0 = initial_parameters(static_cast<int>(np), cfg.seed, 0);
    const std::vector<double> x1 = initial_parameters(static_cast<int>(np), cfg.seed, 1);
    x0.insert(x0.end(), x1.begin(), x1.end());

    OptimizeOptions opt;
    opt.max_iters = cfg.iterations;
    opt.learning_rate = cfg.learning_rate;
    const OptimizeResult res = minimize_adam(obj, std::move(x0), opt);

    const std::span<const double> xs(res.x);
    const Columns a = run_columns(circ, xs.subspan(0, np), rank);
    const Columns b = run_columns(circ, xs.subspan(np, np), rank);
    // The ansatz cannot reach every global phase, so Re<a|M|b> may end up
    // negative. The estimate is |<a|M|b>|, with the left state rephased to match.
    Columns left = a;
    std::vector<double> sv(static_cast<std::size_t>(rank));
    for (std::size_t i = 0; i < sv.size(); ++i) {
        const auto mb = mat_vec(m, b[i], 1.0);
        cplx d{0.0, 0.0};
        for (std::size_t k = 0; k < mb.size(); ++k) d += std::conj(a[i][k]) * mb[k];
        sv[i] = std::abs(d);
        if (sv[i] > 0.0) {
            const cplx phase = d / sv[i];
            for (auto& x : left[i]) x *= phase;
        }
    }
    std::vector<std::size_t> order(sv.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sv[i] > sv[j]; });

    VQSVDResult out;
    for (std::size_t i : order) {
        out.singular_values.push_back(sv[i]);
        out.left.push_back(StateVector::normalized(n, left[i]));
        out.right.push_back(StateVector::normalized(n, b[i]));
    }
    out.objective = -res.f;
    for (double v : res.trace) out.objective_trace.push_back(-v);
    return out;
}

ZeromodeReport steady_state_pipeline(const SchloglSystem& sys, const QPEConfig& qpe_cfg,
                                     const VQSVDConfig& svd_cfg) {
    const GeneratorMatrix q = build_generator(sys);
    const HermitianOperator qh = block_embed(q);
    const UnitaryOperator u = unitary_of(qh);
    const QPEResult qpe = qpe_run(u, qpe_cfg);

    const ComplexMatrix m =
        u.entries() - qpe.lambda_unitary * ComplexMatrix::Identity(u.dim(), u.dim());
    const VQSVDResult svd = vqsvd_decompose(m, svd_cfg);
    const double smallest = svd.singular_values.back();
    if (smallest > 0.1) {
        throw SolverError("null space not found: smallest VQSVD singular value " + format_double(smallest));
    }
    const StateVector& phi = svd.right.back();

    ZeromodeReport r;
    const int dq = q.dim();
    for (int i = 0; i < dq; ++i) r.zeromode.push_back(std::abs(phi[static_cast<std::size_t>(dq + i)]));
    const double total = std::accumulate(r.zeromode.begin(), r.zeromode.end(), 0.0);
    if (!(total > 0)) throw SolverError("recovered state has no weight on the lower block");
    for (double& v : r.zeromode) v /= total;
    r.oracle_zeromode = zeromode(q);
    double ss = 0.0;
    for (int i = 0; i < dq; ++i) {
        const double d = r.zeromode[static_cast<std::size_t>(i)] - r.oracle_zeromode[static_cast<std::size_t>(i)];
        ss += d * d;
    }
    r.rmsd_vs_oracle = std::sqrt(ss / dq);
    const ComplexVector v = phi.to_eigen();
    r.qh_expectation = (v.adjoint() * qh.entries() * v)(0, 0).real();
    r.lambda_min = qpe.lambda_schlogl;
    r.lambda_unitary = qpe.lambda_unitary;
    r.singular_values = svd.singular_values;
    r.objective = svd.objective;
    return r;
}

std::string zeromode_report_json(const ZeromodeReport& r) {
    nlohmann::json j;
    j["zeromode"] = r.zeromode;
    j["oracle_zeromode"] = r.oracle_zeromode;
    j["rmsd_vs_oracle"] = r.rmsd_vs_oracle;
    j["rmsd_percent"] = 100.0 * r.rmsd_vs_oracle;
    j["qh_expectation"] = r.qh_expectation;
    j["lambda_schlogl"] = r.lambda_min;
    j["lambda_unitary"] = {{"re", r.lambda_unitary.real()}, {"im", r.lambda_unitary.imag()}};
    j["singular_values"] = r.singular_values;
    j["objective"] = r.objective;
    return j.dump(2);
}

std::string zeromode_to_csv(const ZeromodeReport& r) {
    std::string out = "state,probability,oracle\n";
    for (std::size_t i = 0; i < r.zeromode.size(); ++i) {
        out += std::to_string(i) + "," + format_double(r.zeromode[i]) + "," + format_double(r.oracle_zeromode[i]) + "\n";
    }
    return out;
}

}  // namespace schlogl
