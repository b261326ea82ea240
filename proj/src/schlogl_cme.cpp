#include "schlogl/schlogl_cme.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "schlogl/errors.hpp"

namespace schlogl {

namespace {

constexpr double kK1 = 3.0;
constexpr double kK2 = 0.6;
constexpr double kK3 = 0.25;
constexpr double kK4 = 2.95;

void require_index(const SchloglSystem& sys, int n) {
    if (n < 0 || n > sys.n_trunc()) {
        throw DomainError("molecule count " + std::to_string(n) + " outside [0, " +
                          std::to_string(sys.n_trunc()) + "]");
    }
}

}  // namespace

SchloglSystem::SchloglSystem(double k1, double k2, double k3, double k4, double a, double b,
                             double volume, int n_trunc)
    : k1_(k1), k2_(k2), k3_(k3), k4_(k4), a_(a), b_(b), volume_(volume), n_trunc_(n_trunc) {
    auto nonneg = [](double v, const char* name) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw DomainError(std::string(name) + " must be finite and >= 0");
        }
    };
    nonneg(k1, "k1");
    nonneg(k2, "k2");
    nonneg(k3, "k3");
    nonneg(k4, "k4");
    nonneg(a, "a");
    nonneg(b, "b");
    if (!(volume > 0.0) || !std::isfinite(volume)) throw DomainError("V must be finite and > 0");
    if (n_trunc < 1) throw DomainError("N_trunc must be >= 1");
}

SchloglSystem SchloglSystem::monostable(double volume, int n_trunc) {
    return {kK1, kK2, kK3, kK4, 0.5, 29.5, volume, n_trunc};
}

SchloglSystem SchloglSystem::bistable(double volume, int n_trunc) {
    return {kK1, kK2, kK3, kK4, 1.0, 1.0, volume, n_trunc};
}

SchloglSystem SchloglSystem::preset(std::string_view name, double volume, int n_trunc) {
    if (name == "monostable") return monostable(volume, n_trunc);
    if (name == "bistable") return bistable(volume, n_trunc);
    throw DomainError("unknown preset '" + std::string(name) + "'");
}

SchloglSystem SchloglSystem::with_volume(double volume) const {
    return {k1_, k2_, k3_, k4_, a_, b_, volume, n_trunc_};
}

SchloglSystem SchloglSystem::with_n_trunc(int n_trunc) const {
    return {k1_, k2_, k3_, k4_, a_, b_, volume_, n_trunc};
}

double SchloglSystem::detailed_balance_ratio() const {
    const double denom = k2_ * k3_ * b_;
    if (denom == 0.0) throw DomainError("detailed-balance ratio undefined: k2*k3*b == 0");
    return k1_ * k4_ * a_ / denom;
}

bool SchloglSystem::is_equilibrium() const {
    return std::abs(detailed_balance_ratio() - 1.0) <= 1e-12;
}

GeneratorMatrix::GeneratorMatrix(RealMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw DomainError("generator must be a non-empty square matrix");
    }
}

GeneratorMatrix GeneratorMatrix::padded_to(int dim) const {
    if (dim < this->dim()) throw DomainError("cannot pad to a smaller dimension");
    RealMatrix out = RealMatrix::Zero(dim, dim);
    out.topLeftCorner(this->dim(), this->dim()) = entries_;
    for (int j = 0; j < dim; ++j) {
        double off = 0.0;
        for (int i = 0; i < dim; ++i) {
            if (i != j) off += out(i, j);
        }
        out(j, j) = -off;
    }
    return GeneratorMatrix(std::move(out));
}

double birth_rate(const SchloglSystem& sys, int n) {
    require_index(sys, n);
    if (n == sys.n_trunc()) return 0.0;
    const double nn = n;
    return sys.a() * sys.k1() * nn * (nn - 1.0) / sys.volume() + sys.b() * sys.k3() * sys.volume();
}

double death_rate(const SchloglSystem& sys, int n) {
    require_index(sys, n);
    const double nn = n;
    const double v = sys.volume();
    return nn * sys.k4() + sys.k2() * nn * (nn - 1.0) * (nn - 2.0) / (v * v);
}

GeneratorMatrix build_generator(const SchloglSystem& sys) {
    const int dim = sys.n_trunc() + 1;
    RealMatrix q = RealMatrix::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) {
        q(n + 1, n) = birth_rate(sys, n);
        q(n, n + 1) = death_rate(sys, n + 1);
    }
    // Diagonal is the negated off-diagonal column sum, also at the boundary.
    // Both off-diagonals of a column are snapped to a grid of 2^-52 times the
    // column scale first; then A + B is exact and the column sums to 0.0 in
    // any summation order. The shift is within one rounding of the rates.
    for (int j = 0; j < dim; ++j) {
        const double up = j > 0 ? q(j - 1, j) : 0.0;
        const double down = j + 1 < dim ? q(j + 1, j) : 0.0;
        const double s = up + down;
        if (s == 0.0) continue;
        int e = 0;
        std::frexp(s, &e);
        const double quantum = std::ldexp(1.0, e - 52);
        const double a = std::nearbyint(up / quantum) * quantum;
        const double b = std::nearbyint(down / quantum) * quantum;
        if (j > 0) q(j - 1, j) = a;
        if (j + 1 < dim) q(j + 1, j) = b;
        q(j, j) = -(a + b);
    }
    return GeneratorMatrix(std::move(q));
}

double deterministic_rhs(const SchloglSystem& sys, double x) {
    return sys.k1() * sys.a() * x * x - sys.k2() * x * x * x - sys.k4() * x + sys.k3() * sys.b();
}

SchloglSystem load_system_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("system config: ") + e.what());
    }
    if (!j.is_object()) throw DomainError("system config must be a JSON object");
    const std::string preset = j.value("preset", std::string("bistable"));
    const SchloglSystem base = SchloglSystem::preset(preset, 1.0, 1);
    auto num = [&](const char* key, double fallback) {
        if (!j.contains(key)) return fallback;
        if (!j[key].is_number()) throw DomainError(std::string("system config: '") + key + "' must be a number");
        return j[key].get<double>();
    };
    int n_trunc = 1;
    if (j.contains("N_trunc")) {
        if (!j["N_trunc"].is_number_integer()) throw DomainError("system config: 'N_trunc' must be an integer");
        n_trunc = j["N_trunc"].get<int>();
    }
    return {num("k1", base.k1()), num("k2", base.k2()), num("k3", base.k3()), num("k4", base.k4()),
            num("a", base.a()),   num("b", base.b()),   num("V", 1.0),        n_trunc};
}

SchloglSystem load_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_system_json(ss.str());
}

}  // namespace schlogl
