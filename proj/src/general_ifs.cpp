#include "dendrite/general_ifs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace dendrite {

namespace {

constexpr double kDigitTolerance = 1e-12;

bool less_complex(Complex a, Complex b) {
    if (a.real() != b.real()) {
        return a.real() < b.real();
    }
    return a.imag() < b.imag();
}

bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

double max_abs(const std::vector<Complex>& values) {
    double m = 0.0;
    for (Complex v : values) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

}  // namespace

void GeneralIFS::validate() const {
    const double r = std::abs(lambda);
    if (!(r > 0.0 && r < 1.0)) {
        throw std::invalid_argument("lambda must satisfy 0 < |lambda| < 1");
    }
    if (digits.size() < 2) {
        throw std::invalid_argument("at least two digits are required");
    }
    for (std::size_t i = 0; i < digits.size(); ++i) {
        for (std::size_t j = i + 1; j < digits.size(); ++j) {
            if (near(digits[i], digits[j], kDigitTolerance)) {
                throw std::invalid_argument("digits must be distinct");
            }
        }
    }
}

std::vector<Complex> GeneralIFS::difference_set() const {
    std::vector<Complex> out;
    for (Complex a : digits) {
        for (Complex b : digits) {
            const Complex d = a - b;
            const bool seen = std::any_of(out.begin(), out.end(), [&](Complex e) { return near(d, e, kDigitTolerance); });
            if (!seen) {
                out.push_back(d);
            }
        }
    }
    std::sort(out.begin(), out.end(), less_complex);
    return out;
}

Complex DifferenceSeries::coefficient(std::size_t n) const {
    if (n < preperiod.size()) {
        return preperiod[n];
    }
    if (period.empty()) {
        return 0.0;
    }
    return period[(n - preperiod.size()) % period.size()];
}

Complex DifferenceSeries::tail(Complex z, std::size_t n) const {
    const std::size_t k = preperiod.size();
    if (n >= k) {
        if (period.empty()) {
            return 0.0;
        }
        const std::size_t p = period.size();
        const std::size_t s = (n - k) % p;
        Complex sum = 0.0;
        for (std::size_t i = p; i-- > 0;) {
            sum = sum * z + period[(s + i) % p];
        }
        return sum / (1.0 - std::pow(z, static_cast<double>(p)));
    }
    Complex sum = tail(z, k);
    for (std::size_t j = k; j-- > n;) {
        sum = sum * z + preperiod[j];
    }
    return sum;
}

Complex DifferenceSeries::evaluate(Complex z) const { return tail(z, 0); }

DifferenceSeries from_signed(const SignedSeries& series) {
    DifferenceSeries out;
    for (int c : series.preperiod) {
        out.preperiod.emplace_back(c, 0.0);
    }
    for (int c : series.period) {
        out.period.emplace_back(c, 0.0);
    }
    return out;
}

DifferenceSeries canonical(const DifferenceSeries& series) {
    DifferenceSeries out = series;
    const std::size_t p = out.period.size();
    for (std::size_t q = 1; q < p; ++q) {
        if (p % q != 0) {
            continue;
        }
        bool repeats = true;
        for (std::size_t i = q; i < p && repeats; ++i) {
            repeats = out.period[i] == out.period[i - q];
        }
        if (repeats) {
            out.period.resize(q);
            break;
        }
    }
    while (!out.period.empty() && out.preperiod.size() > 1 && out.preperiod.back() == out.period.back()) {
        std::rotate(out.period.rbegin(), out.period.rbegin() + 1, out.period.rend());
        out.preperiod.pop_back();
    }
    if (out.period.size() == 1 && out.period[0] == Complex{0.0, 0.0}) {
        out.period.clear();
    }
    if (out.period.empty()) {
        while (out.preperiod.size() > 1 && out.preperiod.back() == Complex{0.0, 0.0}) {
            out.preperiod.pop_back();
        }
    }
    return out;
}

std::string format_difference(const DifferenceSeries& series) {
    auto is_sign = [](Complex c) {
        return c.imag() == 0.0 && (c.real() == -1.0 || c.real() == 0.0 || c.real() == 1.0);
    };
    const bool signs = std::all_of(series.preperiod.begin(), series.preperiod.end(), is_sign) &&
                       std::all_of(series.period.begin(), series.period.end(), is_sign);
    std::ostringstream os;
    if (signs) {
        auto symbol = [](Complex c) { return c.real() > 0 ? '+' : (c.real() < 0 ? '-' : '0'); };
        for (Complex c : series.preperiod) {
            os << symbol(c);
        }
        if (!series.period.empty()) {
            os << '(';
            for (Complex c : series.period) {
                os << symbol(c);
            }
            os << ')';
        }
        return os.str();
    }
    auto list = [&](const std::vector<Complex>& v) {
        os << '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
            os << (i ? "," : "") << v[i].real() << (v[i].imag() < 0 ? "" : "+") << v[i].imag() << 'i';
        }
        os << ']';
    };
    list(series.preperiod);
    if (!series.period.empty()) {
        os << '(';
        list(series.period);
        os << ')';
    }
    return os.str();
}

FEnumeration enumerate_F(const GeneralIFS& ifs, int depth) {
    ifs.validate();
    if (depth < 1 || depth > kMaxEnumerationDepth) {
        throw std::invalid_argument("depth must be in [1, 80]");
    }
    const std::vector<Complex> alphabet = ifs.difference_set();
    if (alphabet.size() > kMaxDifferenceSet) {
        throw std::invalid_argument("difference set exceeds 60 values");
    }
    const Complex lambda = ifs.lambda;
    const double r = std::abs(lambda);
    const double bound = max_abs(alphabet) * r / (1.0 - r) + kCycleQuantum;
    constexpr std::size_t kNodeCap = 5000000;

    FEnumeration result;
    std::vector<Complex> coeffs;
    std::vector<Complex> states;

    // Depth-first in alphabet order; each path stops at its first repeated state.
    auto dfs = [&](auto&& self) -> void {
        if (++result.nodes > kNodeCap) {
            throw ComputationError("enumerate_F", "node cap exceeded");
        }
        const Complex current = states.back();
        for (std::size_t j = 0; j + 1 < states.size(); ++j) {
            if (near(states[j], current, kCycleQuantum)) {
                DifferenceSeries candidate;
                candidate.preperiod.assign(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(j + 1));
                candidate.period.assign(coeffs.begin() + static_cast<std::ptrdiff_t>(j + 1), coeffs.end());
                candidate = canonical(candidate);
                if (std::abs(candidate.evaluate(lambda)) <= kMemberResidual &&
                    std::find(result.members.begin(), result.members.end(), candidate) == result.members.end()) {
                    result.members.push_back(candidate);
                }
                return;
            }
        }
        if (static_cast<int>(coeffs.size()) >= depth) {
            ++result.unresolved;
            return;
        }
        for (Complex c : alphabet) {
            const Complex next = current / lambda + c;
            if (std::abs(next) > bound) {
                continue;
            }
            coeffs.push_back(c);
            states.push_back(next);
            self(self);
            coeffs.pop_back();
            states.pop_back();
        }
    };

    for (Complex c0 : alphabet) {
        if (c0 == Complex{0.0, 0.0} || std::abs(c0) > bound) {
            continue;
        }
        coeffs.assign(1, c0);
        states.assign(1, c0);
        dfs(dfs);
    }
    return result;
}

UniqueDifference unique_difference_check(const GeneralIFS& ifs, const DifferenceSeries& f,
                                         std::size_t from_index) {
    UniqueDifference out;
    const std::size_t end = f.preperiod.size() + f.period.size();
    for (std::size_t n = from_index; n < std::max(end, from_index + 1); ++n) {
        const Complex c = f.coefficient(n);
        std::size_t count = 0;
        for (Complex a : ifs.digits) {
            for (Complex b : ifs.digits) {
                if (near(a - b, c, kDigitTolerance)) {
                    ++count;
                }
            }
        }
        if (count != 1) {
            out.unique = false;
            out.first_violation = n;
            return out;
        }
    }
    return out;
}

LnBound min_gap_search(Complex lambda, Complex tail, Complex forbidden, const std::vector<Complex>& alphabet,
                       bool forbid_zero, int depth) {
    LnBound out;
    out.value = std::numeric_limits<double>::infinity();
    out.upper = std::numeric_limits<double>::infinity();
    const double r = std::abs(lambda);
    const double m = max_abs(alphabet);

    struct Node {
        double lb;
        std::size_t order;
        Complex partial;
        int level;
        Complex power;  ///< lambda^level
    };
    auto worse = [](const Node& a, const Node& b) {
        return a.lb != b.lb ? a.lb > b.lb : a.order > b.order;
    };
    std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
    std::size_t order = 0;

    auto push = [&](Complex partial, int level, Complex power) {
        const double value = std::abs(partial);
        out.upper = std::min(out.upper, value);
        const double lb = value - m * std::pow(r, level) / (1.0 - r);
        open.push(Node{lb, order++, partial, level, power});
        ++out.nodes;
    };

    for (Complex c : alphabet) {
        if (near(c, forbidden, kDigitTolerance) || (forbid_zero && c == Complex{0.0, 0.0})) {
            continue;
        }
        push(-tail + c, 1, lambda);
    }
    if (open.empty()) {
        out.certified = true;
        return out;
    }

    while (true) {
        const Node node = open.top();
        if (node.lb >= (1.0 - kGapTolerance) * out.upper) {
            out.value = std::max(0.0, node.lb);
            out.certified = true;
            return out;
        }
        if (node.level >= depth || out.nodes >= kMaxGapNodes) {
            out.value = std::max(0.0, node.lb);
            out.certified = false;
            return out;
        }
        open.pop();
        for (Complex c : alphabet) {
            push(node.partial + c * node.power, node.level + 1, node.power * lambda);
        }
    }
}

LnBound min_gap_Ln(const GeneralIFS& ifs, const DifferenceSeries& f, std::size_t n, int depth) {
    ifs.validate();
    if (n > 40) {
        throw std::invalid_argument("n must be at most 40");
    }
    LnBound out = min_gap_search(ifs.lambda, f.tail(ifs.lambda, n), f.coefficient(n), ifs.difference_set(),
                                 n == 0, depth);
    out.n = n;
    return out;
}

C1Report c1_estimate(const GeneralIFS& ifs, const DifferenceSeries& f, std::size_t l, std::size_t p, int depth) {
    if (p == 0 || f.period.empty() || f.preperiod.size() > l || p % f.period.size() != 0) {
        throw std::invalid_argument("window needs preperiod <= l and p a multiple of the period");
    }
    C1Report report;
    report.f = f;
    report.window_start = l;
    report.window_period = p;
    report.C1 = std::numeric_limits<double>::infinity();
    for (std::size_t n = l; n < l + p; ++n) {
        LnBound b = min_gap_Ln(ifs, f, n, depth);
        if (!b.certified) {
            throw ComputationError("c1", "L_" + std::to_string(n) + " not certified");
        }
        report.C1 = std::min(report.C1, b.value);
        report.L_values.push_back(b);
    }
    if (!(report.C1 > 0.0)) {
        throw ComputationError("c1", "minimum over the window is not positive");
    }
    report.note = "L_{n+kp} = L_n for n >= " + std::to_string(l) + ", so C1 bounds every n >= " +
                  std::to_string(l);
    return report;
}

}  // namespace dendrite
