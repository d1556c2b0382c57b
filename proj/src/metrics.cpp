#include "fraudlens/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "fraudlens/errors.hpp"
#include "fraudlens/parsing.hpp"

namespace fraudlens {
namespace {

double harmonic(double p, double r) {
    return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

std::vector<std::string> grams(const std::vector<std::string>& tokens, int n) {
    std::vector<std::string> out;
    if (static_cast<int>(tokens.size()) < n) return out;
    out.reserve(tokens.size() - static_cast<size_t>(n) + 1);
    for (size_t i = 0; i + static_cast<size_t>(n) <= tokens.size(); ++i) {
        std::string g = tokens[i];
        for (int k = 1; k < n; ++k) {
            g.push_back('\x1f');
            g += tokens[i + static_cast<size_t>(k)];
        }
        out.push_back(std::move(g));
    }
    return out;
}

long long clipped_matches(const std::vector<std::string>& cand,
                          const std::vector<std::string>& ref) {
    std::unordered_map<std::string, long long> ref_counts;
    for (const auto& g : ref) ++ref_counts[g];
    long long matches = 0;
    for (const auto& g : cand) {
        auto it = ref_counts.find(g);
        if (it != ref_counts.end() && it->second > 0) {
            ++matches;
            --it->second;
        }
    }
    return matches;
}

size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j) {
            if (a[i - 1] == b[j - 1])
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na <= 0.0 || nb <= 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

double normal_two_sided_p(double z) {
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

}  // namespace

PairOutcome classify_pair(bool pred, bool gold) {
    if (pred && gold) return PairOutcome::TP;
    if (pred && !gold) return PairOutcome::FP;
    if (!pred && !gold) return PairOutcome::TN;
    return PairOutcome::FN;
}

ConfusionCounts accumulate(std::span<const std::pair<bool, bool>> pairs) {
    ConfusionCounts c;
    for (const auto& [pred, gold] : pairs) {
        switch (classify_pair(pred, gold)) {
            case PairOutcome::TP: ++c.tp; break;
            case PairOutcome::FP: ++c.fp; break;
            case PairOutcome::TN: ++c.tn; break;
            case PairOutcome::FN: ++c.fn; break;
        }
    }
    return c;
}

LabelMetrics label_metrics(const ConfusionCounts& c) {
    const long long total = c.total();
    if (total <= 0) throw EmptyCountsError();
    LabelMetrics m;
    m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(total);
    m.support = c.tp + c.fn;
    if (c.tp + c.fp > 0) {
        m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
        m.hallucination_rate = 1.0 - *m.precision;
    }
    if (c.tp + c.fn > 0) m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    if (m.precision && m.recall) {
        m.f1 = harmonic(*m.precision, *m.recall);
        m.pr_product = *m.precision * *m.recall;
    }
    return m;
}

double hallucination_reduction(double base_rate, double ft_rate) {
    if (base_rate <= 0.0) throw ZeroBaseRateError();
    return (base_rate - ft_rate) / base_rate * 100.0;
}

LabelMetrics micro_aggregate(std::span<const ConfusionCounts> per_label) {
    if (per_label.empty()) throw EmptyCountsError();
    ConfusionCounts pooled;
    for (const auto& c : per_label) pooled += c;
    return label_metrics(pooled);
}

MacroResult macro_f1(std::span<const std::optional<double>> f1s, MacroOptions options) {
    MacroResult result;
    double sum = 0.0;
    for (const auto& f1 : f1s) {
        if (f1) {
            sum += *f1;
            ++result.used;
        } else if (options.undefined_as_zero) {
            ++result.used;
        } else {
            ++result.skipped;
        }
    }
    result.value = result.used > 0 ? sum / static_cast<double>(result.used) : 0.0;
    return result;
}

double macro_f1(std::span<const double> f1s) {
    double sum = 0.0;
    for (double f1 : f1s) sum += f1;
    return f1s.empty() ? 0.0 : sum / static_cast<double>(f1s.size());
}

IntervalEstimate f1_interval(double f1, long long n) {
    IntervalEstimate est;
    est.point = f1;
    est.n = n;
    est.se = n > 0 ? std::sqrt(f1 * (1.0 - f1) / static_cast<double>(n)) : 0.0;
    est.lo = std::clamp(f1 - 1.96 * est.se, 0.0, 1.0);
    est.hi = std::clamp(f1 + 1.96 * est.se, 0.0, 1.0);
    return est;
}

const char* to_string(Significance s) {
    switch (s) {
        case Significance::TripleStar: return "***";
        case Significance::DoubleStar: return "**";
        case Significance::Star: return "*";
        case Significance::Dagger: return "†";
        case Significance::NotSignificant: return "n.s.";
    }
    return "n.s.";
}

double significance_p_value(double f1_base, double f1_ft, long long n) {
    const double delta = std::abs(f1_ft - f1_base);
    const double se_base = f1_interval(f1_base, n).se;
    const double se_ft = f1_interval(f1_ft, n).se;
    const double pooled = std::sqrt(se_base * se_base + se_ft * se_ft);
    if (pooled <= 0.0) return delta > 0.0 ? 0.0 : 1.0;
    return normal_two_sided_p(delta / pooled);
}

Significance significance_marker(double f1_base, double f1_ft, long long n) {
    const double p = significance_p_value(f1_base, f1_ft, n);
    if (p < 0.001) return Significance::TripleStar;
    if (p < 0.01) return Significance::DoubleStar;
    if (p < 0.05) return Significance::Star;
    if (p < 0.10) return Significance::Dagger;
    return Significance::NotSignificant;
}

PrfScores rouge_n(const std::string& candidate, const std::string& reference, int n) {
    PrfScores s;
    auto cand_tokens = alnum_tokens(candidate);
    auto ref_tokens = alnum_tokens(reference);
    if (cand_tokens.empty() || ref_tokens.empty()) {
        s.empty_input = true;
        return s;
    }
    auto cand_grams = grams(cand_tokens, n);
    auto ref_grams = grams(ref_tokens, n);
    if (cand_grams.empty() || ref_grams.empty()) {
        s.empty_input = true;
        return s;
    }
    long long matches = clipped_matches(cand_grams, ref_grams);
    s.precision = static_cast<double>(matches) / static_cast<double>(cand_grams.size());
    s.recall = static_cast<double>(matches) / static_cast<double>(ref_grams.size());
    s.f1 = harmonic(s.precision, s.recall);
    return s;
}

PrfScores rouge_l(const std::string& candidate, const std::string& reference) {
    PrfScores s;
    auto cand_tokens = alnum_tokens(candidate);
    auto ref_tokens = alnum_tokens(reference);
    if (cand_tokens.empty() || ref_tokens.empty()) {
        s.empty_input = true;
        return s;
    }
    double lcs = static_cast<double>(lcs_length(cand_tokens, ref_tokens));
    s.precision = lcs / static_cast<double>(cand_tokens.size());
    s.recall = lcs / static_cast<double>(ref_tokens.size());
    s.f1 = harmonic(s.precision, s.recall);
    return s;
}

double bleu(const std::string& candidate, const std::string& reference, int max_n) {
    auto cand_tokens = alnum_tokens(candidate);
    auto ref_tokens = alnum_tokens(reference);
    if (cand_tokens.empty() || ref_tokens.empty()) return 0.0;

    double log_sum = 0.0;
    int used_orders = 0;
    for (int n = 1; n <= max_n; ++n) {
        auto cand_grams = grams(cand_tokens, n);
        if (cand_grams.empty()) break;
        auto ref_grams = grams(ref_tokens, n);
        double matches = static_cast<double>(clipped_matches(cand_grams, ref_grams));
        double total = static_cast<double>(cand_grams.size());
        // add-one smoothing on orders above unigram
        double p = n == 1 ? matches / total : (matches + 1.0) / (total + 1.0);
        if (p <= 0.0) return 0.0;
        log_sum += std::log(p);
        ++used_orders;
    }
    if (used_orders == 0) return 0.0;
    double geo_mean = std::exp(log_sum / static_cast<double>(used_orders));
    double brevity = 1.0;
    if (cand_tokens.size() < ref_tokens.size())
        brevity = std::exp(1.0 - static_cast<double>(ref_tokens.size()) /
                                     static_cast<double>(cand_tokens.size()));
    return brevity * geo_mean;
}

std::vector<double> HashedTrigramEmbedder::embed(const std::string& token) const {
    std::vector<double> vec(static_cast<size_t>(dimensions_), 0.0);
    std::string padded = "^" + token + "$";
    for (size_t i = 0; i + 3 <= padded.size(); ++i) {
        uint64_t h = 1469598103934665603ull;
        for (size_t k = 0; k < 3; ++k) {
            h ^= static_cast<unsigned char>(padded[i + k]);
            h *= 1099511628211ull;
        }
        vec[h % static_cast<uint64_t>(dimensions_)] += 1.0;
    }
    if (padded.size() < 3) vec[0] = 1.0;
    return vec;
}

PrfScores embed_similarity(const std::string& candidate, const std::string& reference,
                           const TokenEmbedder& embedder) {
    PrfScores s;
    auto cand_tokens = alnum_tokens(candidate);
    auto ref_tokens = alnum_tokens(reference);
    if (cand_tokens.empty() || ref_tokens.empty()) {
        s.empty_input = true;
        return s;
    }
    std::vector<std::vector<double>> cand_vecs, ref_vecs;
    cand_vecs.reserve(cand_tokens.size());
    ref_vecs.reserve(ref_tokens.size());
    for (const auto& t : cand_tokens) cand_vecs.push_back(embedder.embed(t));
    for (const auto& t : ref_tokens) ref_vecs.push_back(embedder.embed(t));

    auto greedy_mean = [](const std::vector<std::vector<double>>& from,
                          const std::vector<std::vector<double>>& to) {
        double sum = 0.0;
        for (const auto& v : from) {
            double best = 0.0;
            for (const auto& w : to) best = std::max(best, cosine(v, w));
            sum += best;
        }
        return sum / static_cast<double>(from.size());
    };
    s.precision = greedy_mean(cand_vecs, ref_vecs);
    s.recall = greedy_mean(ref_vecs, cand_vecs);
    s.f1 = harmonic(s.precision, s.recall);
    return s;
}

SimilarityScores similarity_scores(const std::string& candidate, const std::string& reference,
                                   const TokenEmbedder* embedder) {
    SimilarityScores s;
    s.rouge1 = rouge_n(candidate, reference, 1);
    s.rouge2 = rouge_n(candidate, reference, 2);
    s.rougeL = rouge_l(candidate, reference);
    s.bleu = bleu(candidate, reference);
    if (embedder) s.embed_f1 = embed_similarity(candidate, reference, *embedder).f1;
    return s;
}

}  // namespace fraudlens
