#pragma once

// Classification metrics, hallucination accounting, normal-approximation
// confidence intervals, significance markers, and explanation-similarity
// scores (ROUGE / BLEU / embedding match).

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fraudlens {

struct ConfusionCounts {
    long long tp = 0;
    long long fp = 0;
    long long tn = 0;
    long long fn = 0;

    long long total() const { return tp + fp + tn + fn; }
    ConfusionCounts& operator+=(const ConfusionCounts& o) {
        tp += o.tp;
        fp += o.fp;
        tn += o.tn;
        fn += o.fn;
        return *this;
    }
    bool operator==(const ConfusionCounts&) const = default;
};

enum class PairOutcome { TP, FP, TN, FN };

PairOutcome classify_pair(bool pred, bool gold);
ConfusionCounts accumulate(std::span<const std::pair<bool, bool>> pairs);

// Ratios are undefined (nullopt) when their denominator is zero; callers
// decide how to aggregate those.
struct LabelMetrics {
    double accuracy = 0.0;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    std::optional<double> hallucination_rate;  // 1 - precision
    std::optional<double> pr_product;
    long long support = 0;  // gold positives
};

LabelMetrics label_metrics(const ConfusionCounts& counts);  // throws EmptyCountsError

// Percent of the base hallucination rate eliminated. Throws ZeroBaseRateError.
double hallucination_reduction(double base_rate, double ft_rate);

LabelMetrics micro_aggregate(std::span<const ConfusionCounts> per_label);

struct MacroOptions {
    bool undefined_as_zero = false;  // default: exclude undefined entries
};

struct MacroResult {
    double value = 0.0;
    int used = 0;
    int skipped = 0;
};

MacroResult macro_f1(std::span<const std::optional<double>> f1s, MacroOptions options = {});
double macro_f1(std::span<const double> f1s);

struct IntervalEstimate {
    double point = 0.0;
    double se = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    long long n = 0;
};

// SE = sqrt(f1 (1 - f1) / n); 95% normal interval clamped to [0, 1].
IntervalEstimate f1_interval(double f1, long long n);

enum class Significance { TripleStar, DoubleStar, Star, Dagger, NotSignificant };

const char* to_string(Significance s);

// Two-sided z test on the F1 difference under the same SE approximation.
Significance significance_marker(double f1_base, double f1_ft, long long n);
double significance_p_value(double f1_base, double f1_ft, long long n);

struct PrfScores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    bool empty_input = false;  // either side had no usable tokens/grams
};

// Lowercased alphanumeric tokenization throughout.
PrfScores rouge_n(const std::string& candidate, const std::string& reference, int n);
PrfScores rouge_l(const std::string& candidate, const std::string& reference);
double bleu(const std::string& candidate, const std::string& reference, int max_n = 4);

// One fixed-dimension vector per token. Implementations must be pure.
class TokenEmbedder {
public:
    virtual ~TokenEmbedder() = default;
    virtual std::vector<double> embed(const std::string& token) const = 0;
};

// Deterministic character-trigram hashing embedder; stands in for heavier
// contextual models behind the same interface.
class HashedTrigramEmbedder : public TokenEmbedder {
public:
    explicit HashedTrigramEmbedder(int dimensions = 64) : dimensions_(dimensions) {}
    std::vector<double> embed(const std::string& token) const override;

private:
    int dimensions_;
};

// Greedy max-cosine token matching: recall averages over reference tokens,
// precision over candidate tokens, F harmonic.
PrfScores embed_similarity(const std::string& candidate, const std::string& reference,
                           const TokenEmbedder& embedder);

struct SimilarityScores {
    PrfScores rouge1;
    PrfScores rouge2;
    PrfScores rougeL;
    double bleu = 0.0;
    std::optional<double> embed_f1;
};

SimilarityScores similarity_scores(const std::string& candidate, const std::string& reference,
                                   const TokenEmbedder* embedder = nullptr);

}  // namespace fraudlens
