#include "dendrite/symbolic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace dendrite {

std::uint8_t PeriodicBits::at(std::size_t n) const {
    if (n < preperiod.size()) {
        return preperiod[n];
    }
    if (period.empty()) {
        return 0;
    }
    return period[(n - preperiod.size()) % period.size()];
}

PeriodicBits parse_bits(std::string_view text) {
    PeriodicBits out;
    bool in_period = false;
    bool closed = false;
    for (char ch : text) {
        if (closed) {
            throw std::invalid_argument("bits: text after period");
        }
        if (ch == '(') {
            if (in_period) {
                throw std::invalid_argument("bits: nested parentheses");
            }
            in_period = true;
        } else if (ch == ')') {
            if (!in_period || out.period.empty()) {
                throw std::invalid_argument("bits: empty or unbalanced period");
            }
            closed = true;
        } else if (ch == '0' || ch == '1') {
            (in_period ? out.period : out.preperiod).push_back(static_cast<std::uint8_t>(ch - '0'));
        } else {
            throw std::invalid_argument(std::string("bits: unexpected character '") + ch + "'");
        }
    }
    if (in_period && !closed) {
        throw std::invalid_argument("bits: unterminated period");
    }
    if (out.preperiod.empty() && out.period.empty()) {
        throw std::invalid_argument("bits: empty word");
    }
    return out;
}

std::string format_bits(const PeriodicBits& bits) {
    std::string s;
    for (auto b : bits.preperiod) {
        s += static_cast<char>('0' + b);
    }
    if (!bits.period.empty()) {
        s += '(';
        for (auto b : bits.period) {
            s += static_cast<char>('0' + b);
        }
        s += ')';
    }
    return s;
}

PeriodicBits canonical_bits(const PeriodicBits& bits) {
    PeriodicBits s = bits;
    if (s.period.empty()) {
        s.period = {0};
    }
    const std::size_t n = s.period.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) {
            continue;
        }
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) {
            ok = s.period[i] == s.period[i - d];
        }
        if (ok) {
            s.period.resize(d);
            break;
        }
    }
    while (!s.preperiod.empty() && s.preperiod.back() == s.period.back()) {
        std::rotate(s.period.rbegin(), s.period.rbegin() + 1, s.period.rend());
        s.preperiod.pop_back();
    }
    return s;
}

Angle::Angle(std::uint64_t num, std::uint64_t den) {
    if (den == 0) {
        throw std::invalid_argument("angle: zero denominator");
    }
    num %= den;
    const std::uint64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Angle Angle::doubled() const {
    const unsigned __int128 twice = static_cast<unsigned __int128>(num_) * 2u;
    return Angle(static_cast<std::uint64_t>(twice % den_), den_);
}

Angle parse_angle(std::string_view text) {
    const auto slash = text.find('/');
    const auto parse_u = [](std::string_view s) {
        if (s.empty()) {
            throw std::invalid_argument("angle: missing number");
        }
        std::uint64_t v = 0;
        for (char ch : s) {
            if (ch < '0' || ch > '9') {
                throw std::invalid_argument("angle: expected digits");
            }
            if (v > (UINT64_MAX - 9) / 10) {
                throw std::invalid_argument("angle: number too large");
            }
            v = v * 10 + static_cast<std::uint64_t>(ch - '0');
        }
        return v;
    };
    if (slash == std::string_view::npos) {
        return Angle(parse_u(text), 1);
    }
    return Angle(parse_u(text.substr(0, slash)), parse_u(text.substr(slash + 1)));
}

std::string format_angle(const Angle& angle) {
    return std::to_string(angle.num()) + "/" + std::to_string(angle.den());
}

DoublingOrbit doubling_orbit(const Angle& theta) {
    DoublingOrbit orbit;
    std::map<std::pair<std::uint64_t, std::uint64_t>, int> seen;
    Angle t = theta;
    while (true) {
        auto [it, inserted] = seen.emplace(std::make_pair(t.num(), t.den()), static_cast<int>(orbit.points.size()));
        if (!inserted) {
            orbit.preperiod = it->second;
            orbit.period = static_cast<int>(orbit.points.size()) - it->second;
            return orbit;
        }
        orbit.points.push_back(t);
        t = t.doubled();
    }
}

Itinerary itinerary_of_address(const AddressWord& a) {
    if (a.empty()) {
        throw std::invalid_argument("itinerary_of_address: empty address");
    }
    Itinerary e;
    e.preperiod.resize(a.size());
    e.preperiod[0] = a[0];
    for (std::size_t n = 1; n < a.size(); ++n) {
        e.preperiod[n] = a[n] != a[n - 1] ? 1 : 0;
    }
    return e;
}

AddressWord address_of_itinerary(const Itinerary& e, std::size_t length) {
    AddressWord a(length);
    for (std::size_t n = 0; n < length; ++n) {
        const auto bit = e.at(n);
        a[n] = n == 0 ? bit : static_cast<std::uint8_t>(a[n - 1] ^ bit);
    }
    return a;
}

namespace {

void require_sign_word(const SignedSeries& s) {
    if (s.preperiod.empty() || s.preperiod[0] != 1) {
        throw std::invalid_argument("kneading: constant term must be +1");
    }
    if (s.period.empty()) {
        throw std::invalid_argument("kneading: coefficient 0 present (finite series)");
    }
    const auto has_zero = [](const std::vector<int>& w) {
        return std::find(w.begin(), w.end(), 0) != w.end();
    };
    if (has_zero(s.preperiod) || has_zero(s.period)) {
        throw std::invalid_argument("kneading: coefficient 0 present");
    }
}

}  // namespace

KneadingCase kneading_case(const SignedSeries& s) {
    require_sign_word(s);
    return s.coefficient(1) == -1 ? KneadingCase::A1 : KneadingCase::A0;
}

KneadingSequence kneading_of_coeffs(const SignedSeries& s) {
    const KneadingCase kcase = kneading_case(s);
    const std::size_t k = s.preperiod.size();
    const std::size_t p = s.period.size();
    const auto nu = [&](std::size_t n) -> std::uint8_t {
        const bool differ = s.coefficient(n) != s.coefficient(n - 1);
        return static_cast<std::uint8_t>(kcase == KneadingCase::A1 ? differ : !differ);
    };
    // nu_n for n > k only involves periodic coefficients.
    KneadingSequence out;
    for (std::size_t n = 1; n <= k; ++n) {
        out.preperiod.push_back(nu(n));
    }
    for (std::size_t n = k + 1; n <= k + p; ++n) {
        out.period.push_back(nu(n));
    }
    return canonical_bits(out);
}

SignedSeries coeffs_of_kneading(const KneadingSequence& nu_in, KneadingCase kcase) {
    const KneadingSequence nu = canonical_bits(nu_in);
    if (nu.at(0) != 1) {
        throw std::invalid_argument("coeffs_of_kneading: nu_1 must be 1");
    }
    const std::uint8_t counted = kcase == KneadingCase::A1 ? 1 : 0;
    const std::size_t k = nu.preperiod.size();
    const std::size_t p = nu.period.size();
    std::size_t per_period = 0;
    for (auto b : nu.period) {
        per_period += b == counted;
    }
    // Signs repeat after one period of nu when it flips an even number of times.
    const std::size_t q = (per_period % 2 == 0) ? p : 2 * p;
    SignedSeries s;
    int sign = 1;
    s.preperiod.push_back(1);
    for (std::size_t n = 1; n <= k + q; ++n) {
        if (nu.at(n - 1) == counted) {
            sign = -sign;
        }
        (n <= k ? s.preperiod : s.period).push_back(sign);
    }
    return canonical(s);
}

bool admissible_sufficient(const KneadingSequence& w_in) {
    const KneadingSequence w = canonical_bits(w_in);
    if (w.at(0) != 1) {
        return false;
    }
    const std::size_t pre = w.preperiod.size();
    const std::size_t per = w.period.size();
    const std::size_t span = pre + 2 * per;
    for (std::size_t k = 1; k < pre + per; ++k) {
        int cmp = 0;
        for (std::size_t i = 0; i < span && cmp == 0; ++i) {
            const int a = w.at(i);
            const int b = w.at(i + k);
            cmp = a - b;
        }
        if (cmp <= 0) {
            return false;
        }
    }
    // A purely periodic w equals its own shift by one period.
    return pre > 0;
}

Angle external_angle(const KneadingSequence& nu_in) {
    const KneadingSequence nu = canonical_bits(nu_in);
    const std::size_t k = nu.preperiod.size();
    const std::size_t p = nu.period.size();
    if (k + p > 62) {
        throw std::invalid_argument("external_angle: preperiod + period exceeds 62");
    }
    std::uint64_t a = 0;
    for (auto b : nu.preperiod) {
        a = (a << 1) | static_cast<std::uint64_t>(1 - b);
    }
    std::uint64_t c = 0;
    for (auto b : nu.period) {
        c = (c << 1) | static_cast<std::uint64_t>(1 - b);
    }
    // theta = (a (2^p - 1) + c) / (2^k (2^p - 1)).
    const std::uint64_t m = (std::uint64_t{1} << p) - 1;
    const unsigned __int128 num = static_cast<unsigned __int128>(a) * m + c;
    const unsigned __int128 den = static_cast<unsigned __int128>(m) << k;
    const unsigned __int128 g = [](unsigned __int128 x, unsigned __int128 y) {
        while (y != 0) {
            const unsigned __int128 t = x % y;
            x = y;
            y = t;
        }
        return x;
    }(num, den);
    const unsigned __int128 rn = num / g;
    const unsigned __int128 rd = den / g;
    if (rd > UINT64_MAX) {
        throw std::invalid_argument("external_angle: denominator overflow");
    }
    return Angle(static_cast<std::uint64_t>(rn % rd), static_cast<std::uint64_t>(rd));
}

DoublingKneading doubling_kneading(const Angle& theta) {
    const DoublingOrbit orbit = doubling_orbit(theta);
    const unsigned __int128 den = theta.den();
    const unsigned __int128 b = theta.num();
    KneadingSequence nu;
    for (std::size_t i = 0; i < orbit.points.size(); ++i) {
        // All orbit points share theta's denominator.
        const unsigned __int128 twice = static_cast<unsigned __int128>(orbit.points[i].num()) * 2u *
                                        (den / orbit.points[i].den());
        if (twice == b || twice == b + den) {
            return {std::nullopt, static_cast<int>(i) + 1};
        }
        const bool inside = twice > b && twice < b + den;
        (static_cast<int>(i) < orbit.preperiod ? nu.preperiod : nu.period)
            .push_back(static_cast<std::uint8_t>(inside));
    }
    return {canonical_bits(nu), std::nullopt};
}

namespace {

using Arcs = std::vector<ArcInterval>;

Arcs normalize(Arcs arcs) {
    std::sort(arcs.begin(), arcs.end(), [](const ArcInterval& a, const ArcInterval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    Arcs merged;
    for (auto& arc : arcs) {
        if (!merged.empty() && arc.lo <= merged.back().hi) {
            if (arc.hi > merged.back().hi) {
                merged.back().hi = arc.hi;
            }
        } else {
            merged.push_back(std::move(arc));
        }
    }
    const bool any_wide = std::any_of(merged.begin(), merged.end(),
                                      [](const ArcInterval& a) { return a.hi > a.lo; });
    if (any_wide) {
        std::erase_if(merged, [](const ArcInterval& a) { return a.hi == a.lo; });
    }
    return merged;
}

Arcs label_set(std::uint8_t symbol, const Rational& half, const Rational& half_plus) {
    switch (symbol) {
        case 1: return {{half, half_plus}};
        case 0: return {{Rational(0), half}, {half_plus, Rational(1)}};
        case kCriticalSymbol: return {{half, half}, {half_plus, half_plus}};
        default: throw std::invalid_argument("angle_from_itinerary: symbol must be 0, 1 or 2");
    }
}

Arcs intersect(const Arcs& a, const Arcs& b) {
    Arcs out;
    for (const auto& x : a) {
        for (const auto& y : b) {
            const Rational lo = x.lo > y.lo ? x.lo : y.lo;
            const Rational hi = x.hi < y.hi ? x.hi : y.hi;
            if (lo <= hi) {
                out.push_back({lo, hi});
            }
        }
    }
    return normalize(std::move(out));
}

Arcs preimage(const Arcs& s) {
    Arcs out;
    out.reserve(2 * s.size());
    for (const auto& arc : s) {
        out.push_back({arc.lo / 2, arc.hi / 2});
        out.push_back({(arc.lo + 1) / 2, (arc.hi + 1) / 2});
    }
    return normalize(std::move(out));
}

}  // namespace

std::vector<ArcInterval> angle_from_itinerary(const std::vector<std::uint8_t>& e, const Angle& theta,
                                              std::size_t depth) {
    if (depth == 0 || depth > e.size()) {
        throw std::invalid_argument("angle_from_itinerary: depth must lie in [1, |e|]");
    }
    const Rational t = theta.exact();
    const Rational half = t / 2;
    const Rational half_plus = (t + 1) / 2;
    Arcs s = label_set(e[depth - 1], half, half_plus);
    for (std::size_t k = depth - 1; k-- > 0;) {
        s = intersect(label_set(e[k], half, half_plus), preimage(s));
        if (s.empty()) {
            throw ItineraryInconsistency(k);
        }
    }
    return s;
}

}  // namespace dendrite
