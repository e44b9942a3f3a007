#include "semibound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "semibound/bounds_iid.hpp"
#include "semibound/expected_loss.hpp"

namespace semibound::oracle {

double DiscreteLaw::mean() const {
    CompensatedSum acc;
    for (const auto& a : atoms) acc.add(a.value * a.prob);
    return acc.value();
}

double DiscreteLaw::variance() const {
    const double m = mean();
    CompensatedSum acc;
    for (const auto& a : atoms) acc.add((a.value - m) * (a.value - m) * a.prob);
    return acc.value();
}

DiscreteLaw make_law(std::vector<DiscreteLaw::Atom> atoms) {
    if (atoms.empty()) throw Error("make_law: empty support");
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.value < b.value; });
    CompensatedSum total;
    for (const auto& a : atoms) {
        if (a.prob < 0.0) throw Error("make_law: negative probability");
        total.add(a.prob);
    }
    if (std::abs(total.value() - 1.0) > 1e-9)
        throw Error("make_law: probabilities must sum to one");
    return DiscreteLaw{std::move(atoms)};
}

DiscreteLaw law_from(const TwoPointDistribution& d) {
    return DiscreteLaw{{{d.low(), d.beta()}, {d.high(), 1.0 - d.beta()}}};
}

namespace {

DiscreteLaw merge_atoms(std::vector<DiscreteLaw::Atom> atoms, double rel_tol) {
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.value < b.value; });
    double scale = 0.0;
    for (const auto& a : atoms) scale = std::max(scale, std::abs(a.value));
    const double tol = rel_tol * scale;

    DiscreteLaw out;
    for (const auto& a : atoms) {
        if (!out.atoms.empty() && a.value - out.atoms.back().value <= tol) {
            auto& last = out.atoms.back();
            const double p = last.prob + a.prob;
            if (p > 0.0) last.value = (last.value * last.prob + a.value * a.prob) / p;
            last.prob = p;
        } else {
            out.atoms.push_back(a);
        }
    }
    return out;
}

} // namespace

DiscreteLaw convolve_iid(const DiscreteLaw& law, int count_n, const NumericConfig& cfg) {
    cfg.validate();
    if (count_n < 1) throw Error("convolve_iid: count_n must be at least 1");
    DiscreteLaw result = law;
    for (int step = 1; step < count_n; ++step) {
        if (result.atoms.size() * law.atoms.size() > 1000000)
            throw TooLarge("convolve_iid: atom count past 1e6");
        std::vector<DiscreteLaw::Atom> next;
        next.reserve(result.atoms.size() * law.atoms.size());
        for (const auto& a : result.atoms)
            for (const auto& b : law.atoms)
                next.push_back({a.value + b.value, a.prob * b.prob});
        result = merge_atoms(std::move(next), cfg.rel_tol);
    }
    return result;
}

double exact_expected_loss(const DiscreteLaw& law, double q) {
    CompensatedSum acc;
    for (const auto& a : law.atoms)
        if (a.value > q) acc.add((a.value - q) * a.prob);
    return acc.value();
}

double exact_tail(const DiscreteLaw& law, double q, bool strict) {
    CompensatedSum acc;
    for (const auto& a : law.atoms) {
        if (strict ? (a.value > q) : (a.value >= q)) acc.add(a.prob);
    }
    return acc.value();
}

namespace {

double draw(const DiscreteLaw& law, std::uint64_t seed, std::uint64_t index) {
    const double u = uniform_from_index(seed, index);
    double cum = 0.0;
    for (const auto& a : law.atoms) {
        cum += a.prob;
        if (u < cum) return a.value;
    }
    return law.atoms.back().value;
}

} // namespace

McEstimate mc_expected_loss(const DiscreteLaw& law, int count_n, double q, long long samples,
                            std::uint64_t seed) {
    if (samples < 1000) throw Error("mc_expected_loss: use at least 1e3 samples");
    CompensatedSum sum;
    CompensatedSum sum_sq;
    for (long long i = 0; i < samples; ++i) {
        double total = 0.0;
        for (int j = 0; j < count_n; ++j)
            total += draw(law, seed, static_cast<std::uint64_t>(i) * count_n + j);
        const double loss = std::max(0.0, total - q);
        sum.add(loss);
        sum_sq.add(loss * loss);
    }
    const double mean = sum.value() / samples;
    const double var = std::max(0.0, (sum_sq.value() - samples * mean * mean) / (samples - 1.0));
    return McEstimate{mean, std::sqrt(var / samples), samples, seed};
}

double normal_expected_loss(double mean, double std_dev, double q) {
    if (!(std_dev > 0.0)) throw NonPositiveVariance("normal_expected_loss: std_dev must be positive");
    const double d = (mean - q) / std_dev;
    return (mean - q) * normal_cdf(d) + std_dev * normal_pdf(d);
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                   double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    return simpson_rec(f, a, fa, b, fb, m, fm, simpson(a, fa, b, fb, fm), tol, 48);
}

bool random_matching_law(const MomentSpec& spec, std::uint64_t seed, std::uint64_t index,
                         DiscreteLaw& out) {
    // three standardized support points, probabilities solved from the
    // moment equations sum p = 1, sum p x = 0, sum p x^2 = 1
    const std::uint64_t base = index * 8 + 1;
    const double a = 0.25 + 2.75 * uniform_from_index(seed, base);
    const double b = 0.25 + 2.75 * uniform_from_index(seed, base + 1);
    const double e = -0.9 + 1.8 * uniform_from_index(seed, base + 2);
    const double x1 = -a;
    const double x2 = e;
    const double x3 = b;
    if (!(x1 < x2 && x2 < x3)) return false;

    const double d21 = x2 - x1;
    const double d31 = x3 - x1;
    const double d32 = x3 - x2;
    // closed-form solution of the 3x3 moment system
    const double p3 = (1.0 + x1 * x2) / (d31 * d32);
    const double p2 = (1.0 + x1 * x3) / (-d21 * d32);
    const double p1 = 1.0 - p2 - p3;
    if (!(p1 >= 0.0 && p2 >= 0.0 && p3 >= 0.0)) return false;

    const double mu = spec.mean();
    const double sigma = spec.std_dev();
    out = make_law({{mu + sigma * x1, p1}, {mu + sigma * x2, p2}, {mu + sigma * x3, p3}});
    return true;
}

AdversarialReport adversarial_search(const MomentSpec& spec, int count_n, double threshold_q,
                                     long long num_laws, std::uint64_t seed) {
    const ShiftedSpec shifted(spec, threshold_q, count_n);
    const double loss_bound = optimal_loss_bound(shifted).value;
    const bool right_tail = spec.mean() > threshold_q / count_n;
    double tail_bound = 0.0;
    if (right_tail)
        tail_bound = improved_tail_lower(SumSpec(spec, count_n, threshold_q)).value;

    AdversarialReport report;
    for (long long i = 0; i < num_laws; ++i) {
        DiscreteLaw law;
        if (!random_matching_law(spec, seed, static_cast<std::uint64_t>(i), law)) continue;
        const DiscreteLaw conv = convolve_iid(law, count_n);
        const double loss = exact_expected_loss(conv, threshold_q);
        report.worst_loss_gap = std::max(report.worst_loss_gap, loss - loss_bound);
        if (right_tail) {
            const double tail = exact_tail(conv, threshold_q, true);
            report.worst_tail_gap = std::max(report.worst_tail_gap, tail_bound - tail);
        }
        ++report.laws_tested;
    }
    return report;
}

} // namespace semibound::oracle
