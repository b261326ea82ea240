#include "schlogl/pauli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "schlogl/errors.hpp"

namespace schlogl {

namespace {

int digit_of(char c) {
    switch (c) {
        case 'I': return 0;
        case 'X': return 1;
        case 'Y': return 2;
        case 'Z': return 3;
        default: throw DomainError(std::string("invalid Pauli character '") + c + "'");
    }
}

void validate_string(const std::string& s, int n_qubits) {
    if (static_cast<int>(s.size()) != n_qubits) {
        throw DomainError("Pauli string '" + s + "' does not have " + std::to_string(n_qubits) +
                          " characters");
    }
    for (char c : s) digit_of(c);
}

}  // namespace

Ordering parse_ordering(const std::string& name) {
    if (name == "default") return Ordering::Default;
    if (name == "positive-first") return Ordering::PositiveFirst;
    if (name == "magnitude") return Ordering::Magnitude;
    if (name == "optimized") return Ordering::Optimized;
    throw DomainError("unknown ordering '" + name + "'");
}

std::string to_string(Ordering o) {
    switch (o) {
        case Ordering::Default: return "default";
        case Ordering::PositiveFirst: return "positive-first";
        case Ordering::Magnitude: return "magnitude";
        case Ordering::Optimized: return "optimized";
    }
    return "default";
}

PauliSum::PauliSum(int n_qubits, std::vector<PauliTerm> terms, Ordering tag)
    : n_qubits_(n_qubits), terms_(std::move(terms)), ordering_(tag) {
    if (n_qubits < 1 || n_qubits > 30) throw DomainError("Pauli sum needs 1..30 qubits");
    std::vector<std::uint64_t> seen;
    for (const auto& t : terms_) {
        validate_string(t.string, n_qubits);
        if (!std::isfinite(t.coefficient)) throw DomainError("non-finite Pauli coefficient");
        seen.push_back(canonical_index(t.string));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw DomainError("duplicate Pauli string in sum");
    }
}

double PauliSum::one_norm() const {
    double s = 0.0;
    for (const auto& t : terms_) s += std::abs(t.coefficient);
    return s;
}

ComplexMatrix PauliSum::to_matrix() const {
    const Eigen::Index d = Eigen::Index{1} << n_qubits_;
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (const auto& t : terms_) {
        const kernels::PauliMask p = to_mask(t.string);
        const cplx phase = kernels::i_power(p.n_y);
        for (Eigen::Index b = 0; b < d; ++b) {
            const auto ub = static_cast<std::uint64_t>(b);
            m(static_cast<Eigen::Index>(ub ^ p.x), b) +=
                t.coefficient * phase * kernels::parity_sign(ub & p.z);
        }
    }
    return m;
}

std::string PauliSum::to_text() const {
    std::string out;
    char buf[64];
    for (const auto& t : terms_) {
        std::snprintf(buf, sizeof buf, "%.17g", t.coefficient);
        out += buf;
        out += ' ';
        out += t.string;
        out += '\n';
    }
    return out;
}

PauliSum PauliSum::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<PauliTerm> terms;
    int n = -1;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string coeff, str;
        if (!(ls >> coeff >> str)) throw DomainError("Pauli text line " + std::to_string(line_no) + " is malformed");
        double c = 0.0;
        const auto [ptr, ec] = std::from_chars(coeff.data(), coeff.data() + coeff.size(), c);
        if (ec != std::errc() || ptr != coeff.data() + coeff.size()) {
            throw DomainError("Pauli text line " + std::to_string(line_no) + ": bad coefficient");
        }
        if (n < 0) n = static_cast<int>(str.size());
        terms.push_back({c, str});
    }
    if (n < 0) throw DomainError("Pauli text contains no terms");
    return PauliSum(n, std::move(terms));
}

std::uint64_t canonical_index(const std::string& s) {
    std::uint64_t idx = 0;
    for (char c : s) idx = idx * 4 + static_cast<std::uint64_t>(digit_of(c));
    return idx;
}

std::string string_of_index(std::uint64_t index, int n_qubits) {
    static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
    std::string s(static_cast<std::size_t>(n_qubits), 'I');
    for (int k = n_qubits - 1; k >= 0; --k) {
        s[static_cast<std::size_t>(k)] = kChars[index & 3];
        index >>= 2;
    }
    return s;
}

kernels::PauliMask to_mask(const std::string& s) {
    kernels::PauliMask m;
    const int n = static_cast<int>(s.size());
    for (int k = 0; k < n; ++k) {
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - k);
        switch (s[static_cast<std::size_t>(k)]) {
            case 'I': break;
            case 'X': m.x |= bit; break;
            case 'Y': m.x |= bit; m.z |= bit; ++m.n_y; break;
            case 'Z': m.z |= bit; break;
            default: throw DomainError("invalid Pauli character");
        }
    }
    return m;
}

ComplexMatrix pauli_matrix(const std::string& s) {
    return PauliSum(static_cast<int>(s.size()), {{1.0, s}}).to_matrix();
}

PauliSum decompose(const HermitianOperator& h, double drop_tolerance) {
    const int n = h.n_qubits();
    const std::uint64_t n_strings = std::uint64_t{1} << (2 * n);
    const double inv_dim = 1.0 / static_cast<double>(h.dim());
    std::vector<double> coeff(n_strings, 0.0);
    const auto total = static_cast<std::int64_t>(n_strings);
#pragma omp parallel for schedule(static) if (n_strings >= 64)
    for (std::int64_t j = 0; j < total; ++j) {
        const auto mask = to_mask(string_of_index(static_cast<std::uint64_t>(j), n));
        coeff[static_cast<std::size_t>(j)] = kernels::serial::pauli_trace(h.entries(), mask).real() * inv_dim;
    }
    std::vector<PauliTerm> terms;
    for (std::uint64_t j = 0; j < n_strings; ++j) {
        if (std::abs(coeff[j]) > drop_tolerance) terms.push_back({coeff[j], string_of_index(j, n)});
    }
    return PauliSum(n, std::move(terms), Ordering::Default);
}

PauliSum sort_terms(const PauliSum& p, Ordering strategy) {
    std::vector<PauliTerm> t = p.terms();
    auto canon_less = [](const PauliTerm& a, const PauliTerm& b) {
        return canonical_index(a.string) < canonical_index(b.string);
    };
    switch (strategy) {
        case Ordering::Default:
            std::sort(t.begin(), t.end(), canon_less);
            break;
        case Ordering::PositiveFirst:
            // Descending by signed value puts positives first, largest first.
            std::stable_sort(t.begin(), t.end(), canon_less);
            std::stable_sort(t.begin(), t.end(), [](const PauliTerm& a, const PauliTerm& b) {
                return a.coefficient > b.coefficient;
            });
            break;
        case Ordering::Magnitude:
            std::stable_sort(t.begin(), t.end(), canon_less);
            std::stable_sort(t.begin(), t.end(), [](const PauliTerm& a, const PauliTerm& b) {
                return std::abs(a.coefficient) > std::abs(b.coefficient);
            });
            break;
        case Ordering::Optimized: {
            const StateVector w0 = constant_state(p.n_qubits());
            std::erase_if(t, [&](const PauliTerm& x) {
                return std::abs(kernels::pauli_expectation(w0.amplitudes(), to_mask(x.string))) <= 1e-12;
            });
            break;
        }
    }
    return PauliSum(p.n_qubits(), std::move(t), strategy);
}

PauliSum truncate(const PauliSum& p, int keep) {
    if (keep < 1 || keep > static_cast<int>(p.size())) {
        throw DomainError("keep=" + std::to_string(keep) + " outside [1, " + std::to_string(p.size()) + "]");
    }
    std::vector<PauliTerm> t(p.terms().begin(), p.terms().begin() + keep);
    return PauliSum(p.n_qubits(), std::move(t), p.ordering());
}

}  // namespace schlogl
