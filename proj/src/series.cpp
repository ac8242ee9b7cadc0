#include "dendrite/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dendrite/polynomial.hpp"

namespace dendrite {

int SignedSeries::coefficient(std::size_t n) const {
    if (n < preperiod.size()) {
        return preperiod[n];
    }
    if (period.empty()) {
        return 0;
    }
    return period[(n - preperiod.size()) % period.size()];
}

int SignedSeries::max_abs_coefficient() const {
    int m = 0;
    for (int a : alphabet) {
        m = std::max(m, std::abs(a));
    }
    return m;
}

void SignedSeries::validate() const {
    if (preperiod.empty()) {
        throw std::invalid_argument("series: missing constant term");
    }
    const auto allowed = [this](int c) {
        return std::find(alphabet.begin(), alphabet.end(), c) != alphabet.end();
    };
    for (int c : preperiod) {
        if (!allowed(c)) {
            throw std::invalid_argument("series: coefficient outside alphabet");
        }
    }
    for (int c : period) {
        if (!allowed(c)) {
            throw std::invalid_argument("series: coefficient outside alphabet");
        }
    }
}

namespace {

int symbol_value(char ch) {
    switch (ch) {
        case '+': return 1;
        case '-': return -1;
        case '0': return 0;
        default: throw std::invalid_argument(std::string("series: unexpected character '") + ch + "'");
    }
}

char value_symbol(int c) {
    switch (c) {
        case 1: return '+';
        case -1: return '-';
        case 0: return '0';
        default: throw std::invalid_argument("series: coefficient has no symbol");
    }
}

// Smallest d dividing |word| with word = (word[0..d))^k.
std::size_t primitive_length(const std::vector<int>& word) {
    const std::size_t n = word.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) {
            continue;
        }
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) {
            ok = word[i] == word[i - d];
        }
        if (ok) {
            return d;
        }
    }
    return n;
}

}  // namespace

SignedSeries parse_series(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw std::invalid_argument("series: empty word");
    }
    SignedSeries s;
    const auto open = text.find('(');
    const std::string_view head = text.substr(0, open);
    for (char ch : head) {
        if (ch == ')') {
            throw std::invalid_argument("series: unbalanced ')'");
        }
        s.preperiod.push_back(symbol_value(ch));
    }
    if (s.preperiod.empty()) {
        throw std::invalid_argument("series: word must start with a coefficient");
    }
    if (open != std::string_view::npos) {
        const auto close = text.find(')', open);
        if (close == std::string_view::npos || close != text.size() - 1) {
            throw std::invalid_argument("series: period must be a final parenthesized group");
        }
        const std::string_view body = text.substr(open + 1, close - open - 1);
        if (body.empty()) {
            throw std::invalid_argument("series: empty parentheses");
        }
        for (char ch : body) {
            s.period.push_back(symbol_value(ch));
        }
    }
    return s;
}

std::string format_series(const SignedSeries& series) {
    std::string out;
    for (int c : series.preperiod) {
        out += value_symbol(c);
    }
    if (!series.period.empty()) {
        out += '(';
        for (int c : series.period) {
            out += value_symbol(c);
        }
        out += ')';
    }
    return out;
}

SignedSeries canonical(const SignedSeries& series) {
    SignedSeries s = series;
    if (!s.period.empty()) {
        s.period.resize(primitive_length(s.period));
        // Roll the period back into the preperiod while the last symbols agree;
        // at least the constant term stays in the preperiod.
        while (s.preperiod.size() > 1 && s.preperiod.back() == s.period.back()) {
            std::rotate(s.period.rbegin(), s.period.rbegin() + 1, s.period.rend());
            s.preperiod.pop_back();
        }
        if (s.period.size() == 1 && s.period[0] == 0) {
            s.period.clear();
        }
    }
    if (s.period.empty()) {
        while (s.preperiod.size() > 1 && s.preperiod.back() == 0) {
            s.preperiod.pop_back();
        }
    }
    return s;
}

Complex RationalForm::eval_numerator(Complex z) const {
    Complex acc = 0.0;
    for (auto it = numerator.rbegin(); it != numerator.rend(); ++it) {
        acc = acc * z + static_cast<double>(*it);
    }
    return acc;
}

Complex RationalForm::eval_denominator(Complex z) const {
    Complex acc = 0.0;
    for (auto it = denominator.rbegin(); it != denominator.rend(); ++it) {
        acc = acc * z + static_cast<double>(*it);
    }
    return acc;
}

RationalForm to_rational(const SignedSeries& series) {
    RationalForm rf;
    const std::size_t k = series.preperiod.size();
    const std::size_t p = series.period.size();
    if (p == 0) {
        rf.numerator.assign(series.preperiod.begin(), series.preperiod.end());
        rf.denominator = {1};
    } else {
        rf.numerator.assign(k + p, 0);
        for (std::size_t i = 0; i < k; ++i) {
            rf.numerator[i] += series.preperiod[i];
            rf.numerator[i + p] -= series.preperiod[i];
        }
        for (std::size_t i = 0; i < p; ++i) {
            rf.numerator[k + i] += series.period[i];
        }
        rf.denominator.assign(p + 1, 0);
        rf.denominator[0] = 1;
        rf.denominator[p] = -1;
    }
    while (rf.numerator.size() > 1 && rf.numerator.back() == 0) {
        rf.numerator.pop_back();
    }
    return rf;
}

PartialSum eval_partial(const SignedSeries& series, Complex z, int depth) {
    const double r = std::abs(z);
    if (!(r < 1.0)) {
        throw std::invalid_argument("eval_partial: |z| must be < 1");
    }
    if (depth < 0) {
        throw std::invalid_argument("eval_partial: negative depth");
    }
    Complex value = 0.0;
    Complex power = 1.0;
    for (int n = 0; n <= depth; ++n) {
        const int c = series.coefficient(static_cast<std::size_t>(n));
        if (c != 0) {
            value += static_cast<double>(c) * power;
        }
        power *= z;
    }
    const double tail = series.max_abs_coefficient() * std::pow(r, depth + 1) / (1.0 - r);
    return {value, tail};
}

namespace {

constexpr int kMaxTerms = 4000;
constexpr double kTailTarget = 1e-15;

// Coefficients as a dense prefix so cell tests do not repeat index arithmetic.
struct SeriesTable {
    std::vector<double> coeffs;
    double bound;

    explicit SeriesTable(const SignedSeries& s) : bound(s.max_abs_coefficient()) {
        coeffs.resize(kMaxTerms + 1);
        for (int n = 0; n <= kMaxTerms; ++n) {
            coeffs[static_cast<std::size_t>(n)] = s.coefficient(static_cast<std::size_t>(n));
        }
    }

    int terms_for(double r) const {
        if (r <= 0.0) {
            return 0;
        }
        const double need = std::log(kTailTarget * (1.0 - r) / std::max(bound, 1.0)) / std::log(r);
        return std::clamp(static_cast<int>(std::ceil(need)), 8, kMaxTerms);
    }

    // Partial sum and derivative to n terms with bounds on both tails.
    void eval(Complex z, Complex& f, double& f_tail, Complex& df, double& df_tail) const {
        const double r = std::abs(z);
        const int n = terms_for(r);
        f = 0.0;
        df = 0.0;
        for (int k = n; k >= 0; --k) {
            df = df * z + f;
            f = f * z + coeffs[static_cast<std::size_t>(k)];
        }
        const double rn = std::pow(r, n);
        f_tail = bound * rn * r / (1.0 - r);
        df_tail = bound * rn * ((n + 1) - n * r) / ((1.0 - r) * (1.0 - r));
    }
};

struct Cell {
    double x, y, half;
    int level;
};

constexpr int kLevelCap = 40;
constexpr std::size_t kCellCap = 400000;

}  // namespace

std::vector<CandidateCell> zero_candidate_cells(const SignedSeries& series, double radius,
                                                double min_half_width) {
    const SeriesTable table(series);
    std::vector<Cell> stack{{0.0, 0.0, radius, 0}};
    std::vector<CandidateCell> out;
    std::size_t visited = 0;
    while (!stack.empty()) {
        const Cell cell = stack.back();
        stack.pop_back();
        if (++visited > kCellCap) {
            throw ComputationError("certify", "subdivision cell budget exhausted");
        }
        const double dx = std::max(std::abs(cell.x) - cell.half, 0.0);
        const double dy = std::max(std::abs(cell.y) - cell.half, 0.0);
        if (std::hypot(dx, dy) >= radius) {
            continue;
        }
        const Complex w{cell.x, cell.y};
        const double reach = cell.half * std::sqrt(2.0);
        const double rho = std::abs(w) + reach;
        if (rho < 1.0) {
            Complex f, df;
            double f_tail = 0.0, df_tail = 0.0;
            table.eval(w, f, f_tail, df, df_tail);
            // |f'| on the cell: crude global bound, or center value plus curvature.
            const double one_minus = 1.0 - rho;
            const double lip_global = table.bound / (one_minus * one_minus);
            const double curvature = 2.0 * table.bound / (one_minus * one_minus * one_minus);
            const double lip = std::min(lip_global, std::abs(df) + df_tail + curvature * reach);
            if (std::abs(f) > f_tail + lip * reach) {
                continue;
            }
        }
        if (cell.half <= min_half_width || cell.level >= kLevelCap) {
            out.push_back({w, cell.half});
            continue;
        }
        const double h = cell.half / 2.0;
        for (int q = 0; q < 4; ++q) {
            stack.push_back({cell.x + ((q & 1) ? h : -h), cell.y + ((q & 2) ? h : -h), h, cell.level + 1});
        }
    }
    return out;
}

namespace {

// Candidate cells touching (including diagonally) the cell that contains v,
// grown transitively.
std::vector<CandidateCell> cluster_around(const std::vector<CandidateCell>& cells, Complex v) {
    std::vector<bool> taken(cells.size(), false);
    std::vector<std::size_t> frontier;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        const double slack = c.half_width * (1.0 + 1e-9);
        if (std::abs(v.real() - c.center.real()) <= slack && std::abs(v.imag() - c.center.imag()) <= slack) {
            taken[i] = true;
            frontier.push_back(i);
        }
    }
    std::vector<CandidateCell> out;
    while (!frontier.empty()) {
        const std::size_t i = frontier.back();
        frontier.pop_back();
        out.push_back(cells[i]);
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (taken[j]) {
                continue;
            }
            const double reach = (cells[i].half_width + cells[j].half_width) * (1.0 + 1e-9);
            if (std::abs(cells[i].center.real() - cells[j].center.real()) <= reach &&
                std::abs(cells[i].center.imag() - cells[j].center.imag()) <= reach) {
                taken[j] = true;
                frontier.push_back(j);
            }
        }
    }
    return out;
}

bool rouche_single_zero(const SeriesTable& table, Complex v, double& disk_radius) {
    const double r_v = std::abs(v);
    if (!(r_v < 1.0)) {
        return false;
    }
    Complex f, df;
    double f_tail = 0.0, df_tail = 0.0;
    table.eval(v, f, f_tail, df, df_tail);
    const double f0 = std::abs(f) + f_tail;
    const double f1 = std::abs(df) - df_tail;
    if (f1 <= 0.0) {
        return false;
    }
    const double r0 = 0.5 * (1.0 - r_v);
    const double one_minus = 1.0 - (r_v + r0);
    const double k2 = 2.0 * table.bound / (one_minus * one_minus * one_minus);
    const double r = std::min(r0, f1 / k2);
    // On |z - v| = r: |f(z) - f'(v)(z - v)| <= f0 + k2 r^2 / 2 < |f'(v)| r.
    disk_radius = r;
    return f0 + 0.5 * k2 * r * r < f1 * r;
}

bool certify_with_cells(const SeriesTable& table, const std::vector<CandidateCell>& cells, Complex v) {
    const auto cluster = cluster_around(cells, v);
    if (cluster.empty()) {
        return false;
    }
    double disk = 0.0;
    if (!rouche_single_zero(table, v, disk)) {
        return false;
    }
    for (const auto& c : cluster) {
        const double corner = std::abs(c.center - v) + c.half_width * std::sqrt(2.0);
        if (corner > disk) {
            return false;
        }
    }
    return true;
}

constexpr double kCellWidth = 1e-5;

}  // namespace

bool certify_unique_zero(const SignedSeries& series, Complex value, double radius) {
    const SeriesTable table(series);
    try {
        const auto cells = zero_candidate_cells(series, radius, kCellWidth);
        return certify_with_cells(table, cells, value);
    } catch (const ComputationError&) {
        return false;
    }
}

std::vector<DiskRoot> roots_in_disk(const SignedSeries& input, double radius) {
    if (!(radius > 0.0 && radius < 1.0)) {
        throw std::invalid_argument("roots_in_disk: radius must lie in (0,1)");
    }
    input.validate();
    const SignedSeries series = canonical(input);
    const RationalForm rf = to_rational(series);
    if (std::all_of(rf.numerator.begin(), rf.numerator.end(), [](std::int64_t c) { return c == 0; })) {
        throw std::invalid_argument("roots_in_disk: numerator identically zero");
    }
    if (rf.numerator.size() <= 1) {
        return {};
    }
    std::vector<Complex> num(rf.numerator.begin(), rf.numerator.end());
    const auto jet = [&num](Complex z) { return poly::horner_jet(num, z); };

    std::vector<Complex> found;
    for (Complex z : poly::roots(num)) {
        z = poly::newton_polish(jet, z, 1e-13);
        if (!(std::abs(z) < radius)) {
            continue;
        }
        // Zeros of 1 - z^p sit on the unit circle, so this only guards
        // against a polished value drifting onto one.
        if (std::abs(rf.eval_denominator(z)) < 1e-8) {
            continue;
        }
        if (std::abs(z.imag()) < 1e-13) {
            z.imag(0.0);
        }
        found.push_back(z);
    }
    std::sort(found.begin(), found.end(), [](Complex a, Complex b) {
        if (a.imag() != b.imag()) {
            return a.imag() > b.imag();
        }
        return a.real() < b.real();
    });
    std::vector<Complex> unique;
    for (Complex z : found) {
        const bool dup = std::any_of(unique.begin(), unique.end(),
                                     [z](Complex u) { return std::abs(u - z) < 1e-8; });
        if (!dup) {
            unique.push_back(z);
        }
    }

    const SeriesTable table(series);
    std::vector<CandidateCell> cells;
    bool have_cells = true;
    try {
        cells = zero_candidate_cells(series, radius, kCellWidth);
    } catch (const ComputationError&) {
        have_cells = false;
    }
    std::vector<DiskRoot> out;
    for (Complex z : unique) {
        DiskRoot root;
        root.value = z;
        root.search_radius = radius;
        Complex f, df;
        double f_tail = 0.0, df_tail = 0.0;
        table.eval(z, f, f_tail, df, df_tail);
        root.residual_bound = std::abs(f) + f_tail;
        root.certified = have_cells && certify_with_cells(table, cells, z);
        out.push_back(root);
    }
    return out;
}

}  // namespace dendrite
