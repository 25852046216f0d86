#include "planereg/evaluation.hpp"

#include <algorithm>
#include <cmath>

namespace planereg {

double correspondence_error(const RigidMotion& motion, const CorrespondenceSet& corr) {
    if (corr.pairs.empty()) {
        throw EmptyCorrespondences("correspondence_error: no correspondences");
    }
    double sum = 0.0;
    for (const auto& [pa, pb] : corr.pairs) {
        sum += (motion.apply(pa) - pb).norm();
    }
    return sum / static_cast<double>(corr.pairs.size());
}

EvalReport aggregate(const std::vector<PairOutcome>& results, double validity_threshold) {
    EvalReport rep;
    rep.total = results.size();

    std::vector<double> reg_errors;
    double time_sum = 0.0;
    for (const PairOutcome& r : results) {
        time_sum += r.elapsed_ms;
        if (!r.registered) continue;
        ++rep.registered;
        const double err = r.corr_error.value_or(0.0);
        reg_errors.push_back(err);
        if (err < validity_threshold) ++rep.valid;
    }

    const double total = static_cast<double>(std::max<std::size_t>(1, rep.total));
    rep.success_pct = 100.0 * static_cast<double>(rep.registered) / total;
    rep.recall_pct = 100.0 * static_cast<double>(rep.valid) / total;
    if (rep.registered > 0) {
        rep.precision_pct =
            100.0 * static_cast<double>(rep.valid) / static_cast<double>(rep.registered);
        double sq = 0.0;
        for (const double e : reg_errors) sq += e * e;
        rep.rmse = std::sqrt(sq / static_cast<double>(reg_errors.size()));
        std::sort(reg_errors.begin(), reg_errors.end());
        const std::size_t n = reg_errors.size();
        rep.mae = n % 2 == 1 ? reg_errors[n / 2]
                             : 0.5 * (reg_errors[n / 2 - 1] + reg_errors[n / 2]);
    } else {
        rep.precision_pct = 0.0;
        rep.precision_degenerate = true;
    }
    rep.mean_time_ms = rep.total > 0 ? time_sum / total : 0.0;
    return rep;
}

}  // namespace planereg
