// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#include "onhold/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "onhold/error.hpp"
#include "onhold/io.hpp"

namespace onhold {

namespace {

// log(1 + e^z) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double dot(std::span<const double> w, double b, const FeatureVector& v) {
    double z = b;
    for (const auto& [id, x] : v.weights) z += w[id] * x;
    return z;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

double sigmoid(double z) noexcept {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double LinearModel::pre_activation(const FeatureVector& v) const {
    double z = bias;
    for (const auto& [id, x] : v.weights) {
        if (id < weights.size()) z += weights[id] * x;
    }
    return z;
}

double score(const LinearModel& m, const FeatureVector& v) { return sigmoid(m.pre_activation(v)); }

bool is_positive(Label label) noexcept { return label == Label::OnHold; }

double positive_class_weight(std::span<const Label> labels, const Hyperparams& h) {
    const auto pos = static_cast<std::size_t>(std::count_if(labels.begin(), labels.end(), is_positive));
    const std::size_t neg = labels.size() - pos;
    if (pos == 0 || neg == 0) {
        throw Error(ErrorKind::DegenerateTraining, "training data needs both on-hold and other comments (got " +
                                                       std::to_string(pos) + " positive, " + std::to_string(neg) +
                                                       " negative)");
    }
    if (h.class_weight_positive) return *h.class_weight_positive;
    return static_cast<double>(neg) / static_cast<double>(pos);
}

double logistic_loss(std::span<const double> weights, double bias, std::span<const FeatureVector> vectors,
                     std::span<const Label> labels, double positive_weight, double l2_lambda, Gradient* grad) {
    if (grad) {
        grad->weights.assign(weights.size(), 0.0);
        grad->bias = 0.0;
    }
    double total_weight = 0.0;
    double loss = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const bool y = is_positive(labels[i]);
        const double c = y ? positive_weight : 1.0;
        const double z = dot(weights, bias, vectors[i]);
        total_weight += c;
        loss += c * (softplus(z) - (y ? z : 0.0));
        if (grad) {
            const double r = c * (sigmoid(z) - (y ? 1.0 : 0.0));
            for (const auto& [id, x] : vectors[i].weights) grad->weights[id] += r * x;
            grad->bias += r;
        }
    }
    double penalty = 0.0;
    for (double w : weights) penalty += w * w;
    loss = loss / total_weight + 0.5 * l2_lambda * penalty;
    if (grad) {
        for (std::size_t j = 0; j < weights.size(); ++j) {
            grad->weights[j] = grad->weights[j] / total_weight + l2_lambda * weights[j];
        }
        grad->bias /= total_weight;
    }
    return loss;
}

LinearModel train(std::span<const FeatureVector> vectors, std::span<const Label> labels, std::size_t dimension,
                  const Hyperparams& h) {
    if (vectors.size() != labels.size()) {
        throw Error(ErrorKind::InvalidArgument, "vectors and labels differ in length");
    }
    if (!(h.learning_rate > 0.0) || !(h.l2_lambda >= 0.0) || (h.class_weight_positive && !(*h.class_weight_positive > 0))) {
        throw Error(ErrorKind::InvalidArgument, "learning_rate and class weight must be > 0, l2_lambda >= 0");
    }
    const double positive_weight = positive_class_weight(labels, h);

    double max_norm2 = 0.0;
    for (const auto& v : vectors) {
        double n2 = 1.0;  // bias feature
        for (const auto& [id, x] : v.weights) {
            if (id >= dimension) throw Error(ErrorKind::InvalidArgument, "feature id outside the model dimension");
            n2 += x * x;
        }
        max_norm2 = std::max(max_norm2, n2);
    }
    // The gradient of the mean logistic loss is Lipschitz with constant at
    // most max|x|^2 / 4 + lambda; a step of 1/L never increases the loss.
    const double lipschitz = 0.25 * max_norm2 + h.l2_lambda;
    const double step = h.learning_rate / lipschitz;

    LinearModel m;
    m.hyperparams = h;
    m.weights.resize(dimension);
    std::mt19937_64 rng(h.seed);
    for (auto& w : m.weights) w = (static_cast<double>(rng() >> 11) * 0x1p-53 - 0.5) * 1e-3;

    Gradient g;
    for (std::size_t epoch = 0; epoch <= h.epochs; ++epoch) {
        const double loss =
            logistic_loss(m.weights, m.bias, vectors, labels, positive_weight, h.l2_lambda, epoch < h.epochs ? &g : nullptr);
        if (!std::isfinite(loss)) {
            throw Error(ErrorKind::NonFiniteLoss,
                        "training loss diverged at epoch " + std::to_string(epoch) + "; lower the learning rate");
        }
        m.loss_trace.push_back(loss);
        if (epoch == h.epochs) break;
        for (std::size_t j = 0; j < dimension; ++j) m.weights[j] -= step * g.weights[j];
        m.bias -= step * g.bias;
    }
    for (double w : m.weights) {
        if (!std::isfinite(w)) throw Error(ErrorKind::NonFiniteLoss, "non-finite weight after training");
    }
    return m;
}

FeatureVector l2_normalized(FeatureVector v) {
    double n2 = 0.0;
    for (const auto& [id, x] : v.weights) n2 += x * x;
    if (n2 > 0.0) {
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& [id, x] : v.weights) x *= inv;
    }
    return v;
}

Prediction make_prediction(std::string comment_id, double score, double threshold) {
    return {std::move(comment_id), score, score >= threshold ? Label::OnHold : Label::NotOnHold};
}

Prediction baseline_classify(const KeywordBaseline& b, const AbstractedComment& c) {
    std::size_t present = 0;
    for (const auto& k : b.keywords) {
        const bool in_lemmas = std::find(c.tokens.begin(), c.tokens.end(), k) != c.tokens.end();
        const bool in_surface = std::find(c.surface_tokens.begin(), c.surface_tokens.end(), k) != c.surface_tokens.end();
        if (in_lemmas || in_surface) ++present;
    }
    const double s = b.keywords.empty() ? 0.0 : static_cast<double>(present) / static_cast<double>(b.keywords.size());
    Prediction p{c.comment_id, s, present > 0 ? Label::OnHold : Label::NotOnHold};
    return p;
}

NGramTable build_unigram_table(std::span<const AbstractedComment> corpus) {
    return enumerate_ngrams(corpus, 1, kDefaultMinFreq);
}

NGramLogisticClassifier::NGramLogisticClassifier(Hyperparams h, std::size_t max_n, std::size_t min_freq)
    : hyperparams_(h), max_n_(max_n), min_freq_(min_freq) {}

void NGramLogisticClassifier::fit(std::span<const AbstractedComment> comments, std::span<const Label> labels) {
    if (comments.size() != labels.size()) throw Error(ErrorKind::InvalidArgument, "comments and labels differ in length");
    positive_class_weight(labels, hyperparams_);  // rejects single-class input before any work
    table_ = enumerate_ngrams(comments, max_n_, min_freq_);
    std::vector<FeatureVector> vectors;
    vectors.reserve(comments.size());
    for (const auto& c : comments) vectors.push_back(l2_normalized(vectorize(c, table_)));
    model_ = train(vectors, labels, table_.size(), hyperparams_);
    fitted_ = true;
}

std::vector<Prediction> NGramLogisticClassifier::predict(std::span<const AbstractedComment> comments) const {
    if (!fitted_) throw Error(ErrorKind::InvalidArgument, "classifier used before fit");
    std::vector<Prediction> out;
    out.reserve(comments.size());
    for (const auto& c : comments) {
        out.push_back(make_prediction(c.comment_id, score(model_, l2_normalized(vectorize(c, table_)))));
    }
    return out;
}

// Format:
//   onhold-model v1
//   max_n <n> / min_freq <n> / documents <D> / bias <b> / hyperparameter lines
//   grams <count>
//   <gram> \t <weight> \t <gtf> \t <sdf>     (one row per table entry)
void NGramLogisticClassifier::save(std::ostream& out) const {
    if (!fitted_) throw Error(ErrorKind::InvalidArgument, "cannot save an untrained classifier");
    const auto& h = model_.hyperparams;
    out << "onhold-model v1\n";
    out << "max_n " << max_n_ << '\n';
    out << "min_freq " << min_freq_ << '\n';
    out << "documents " << table_.documents() << '\n';
    out << "bias " << format_double(model_.bias) << '\n';
    out << "l2_lambda " << format_double(h.l2_lambda) << '\n';
    out << "learning_rate " << format_double(h.learning_rate) << '\n';
    out << "epochs " << h.epochs << '\n';
    if (h.class_weight_positive) out << "class_weight_positive " << format_double(*h.class_weight_positive) << '\n';
    out << "seed " << h.seed << '\n';
    out << "grams " << table_.size() << '\n';
    for (std::size_t i = 0; i < table_.size(); ++i) {
        const auto& e = table_[i];
        out << gram_key(e.gram) << '\t' << format_double(model_.weights[i]) << '\t' << e.gtf << '\t' << e.sdf << '\n';
    }
}

NGramLogisticClassifier NGramLogisticClassifier::load(std::istream& in) {
    auto fail = [](const std::string& why) { return Error(ErrorKind::ModelFormat, why); };
    std::string line;
    if (!std::getline(in, line)) throw fail("empty model file");
    if (line != "onhold-model v1") throw fail("unsupported model header '" + line + "'");

    Hyperparams h;
    std::size_t max_n = 0, min_freq = 0, documents = 0, grams = 0;
    double bias = 0.0;
    bool have_grams = false;
    try {
        while (!have_grams && std::getline(in, line)) {
            std::istringstream kv(line);
            std::string key, value;
            kv >> key >> value;
            if (key == "max_n") max_n = std::stoull(value);
            else if (key == "min_freq") min_freq = std::stoull(value);
            else if (key == "documents") documents = std::stoull(value);
            else if (key == "bias") bias = std::stod(value);
            else if (key == "l2_lambda") h.l2_lambda = std::stod(value);
            else if (key == "learning_rate") h.learning_rate = std::stod(value);
            else if (key == "epochs") h.epochs = std::stoull(value);
            else if (key == "class_weight_positive") h.class_weight_positive = std::stod(value);
            else if (key == "seed") h.seed = std::stoull(value);
            else if (key == "grams") {
                grams = std::stoull(value);
                have_grams = true;
            } else throw fail("unknown model field '" + key + "'");
        }
    } catch (const std::logic_error&) {
        throw fail("bad value in line '" + line + "'");
    }
    if (!have_grams || max_n == 0) throw fail("model header incomplete");

    std::vector<NGramEntry> entries;
    std::vector<double> weights;
    entries.reserve(grams);
    weights.reserve(grams);
    const double d = static_cast<double>(documents);
    for (std::size_t i = 0; i < grams; ++i) {
        if (!std::getline(in, line)) throw fail("model truncated after " + std::to_string(i) + " grams");
        std::istringstream row(line);
        std::string gram, weight, gtf, sdf;
        if (!std::getline(row, gram, '\t') || !std::getline(row, weight, '\t') || !std::getline(row, gtf, '\t') ||
            !std::getline(row, sdf)) {
            throw fail("bad gram row '" + line + "'");
        }
        NGramEntry e;
        std::istringstream words(gram);
        for (std::string w; words >> w;) e.gram.push_back(w);
        try {
            weights.push_back(std::stod(weight));
            e.gtf = std::stoull(gtf);
            e.sdf = std::stoull(sdf);
        } catch (const std::logic_error&) {
            throw fail("bad gram row '" + line + "'");
        }
        if (e.sdf == 0 || e.sdf > documents) throw fail("sdf out of range in row '" + line + "'");
        e.weight = static_cast<double>(e.gtf) * std::log(d / static_cast<double>(e.sdf));
        entries.push_back(std::move(e));
    }

    NGramLogisticClassifier c(h, max_n, min_freq);
    c.table_ = NGramTable(std::move(entries), documents, max_n);
    c.model_.weights = std::move(weights);
    c.model_.bias = bias;
    c.model_.hyperparams = h;
    c.fitted_ = true;
    return c;
}

void NGramLogisticClassifier::save(const std::filesystem::path& path) const {
    std::ostringstream out;
    save(out);
    write_file_atomic(path, out.str());
}

NGramLogisticClassifier NGramLogisticClassifier::load(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    return load(in);
}

std::vector<Prediction> KeywordClassifier::predict(std::span<const AbstractedComment> comments) const {
    std::vector<Prediction> out;
    out.reserve(comments.size());
    for (const auto& c : comments) out.push_back(baseline_classify(baseline_, c));
    return out;
}

}  // namespace onhold
