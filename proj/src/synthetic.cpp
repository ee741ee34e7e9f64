// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

#include "onhold/synthetic.hpp"

#include <array>
#include <cctype>
#include <string_view>

#include "onhold/error.hpp"
#include "onhold/random.hpp"

namespace onhold {

namespace {

constexpr std::array<std::string_view, 6> kPrefixes{"TODO", "TODO:", "FIXME", "FIXME:", "XXX", "HACK:"};
constexpr std::array<std::string_view, 10> kProducts{"Camel", "Hadoop", "Yarn", "Hdfs", "Tomcat",
                                                     "Jetty", "Maven", "Solr", "Log4j", "Jruby"};
constexpr std::array<std::string_view, 20> kFillers{"the",    "parser", "cache",  "handler", "lookup",
                                                    "binding", "method", "logic", "check",   "hack",
                                                    "code",   "test",   "call",   "config",  "buffer",
                                                    "stream", "route",  "header", "timeout", "field"};
constexpr std::array<std::string_view, 12> kMonths{"January", "February", "March",     "April",   "May",      "June",
                                                   "July",    "August",   "September", "October", "November", "December"};
constexpr std::array<std::string_view, 3> kProjects{"apollo", "borealis", "cygnus"};

class Writer {
  public:
    explicit Writer(std::uint64_t seed) : rng_(seed) {}

    template <std::size_t N>
    std::string pick(const std::array<std::string_view, N>& from) {
        return std::string(from[uniform_below(rng_, N)]);
    }

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform_below(rng_, n)); }

    std::string product() { return pick(kProducts); }

    std::string version() {
        std::string v = std::to_string(1 + below(9)) + "." + std::to_string(below(10));
        if (below(2)) v += "." + std::to_string(below(10));
        return v;
    }

    std::string bug() {
        std::string p = product();
        for (auto& ch : p) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        return p + "-" + std::to_string(1 + below(9999));
    }

    std::string date() {
        const std::size_t day = 1 + below(28), month = below(12), year = 2005 + below(15);
        if (below(2)) return std::to_string(day) + " " + std::string(kMonths[month]) + " " + std::to_string(year);
        auto two = [](std::size_t x) { return (x < 10 ? "0" : "") + std::to_string(x); };
        return two(day) + "/" + two(month + 1) + "/" + std::to_string(year);
    }

    // Planted on-hold phrase (twin = false) or the same words reordered.
    std::string planted(std::size_t kind, bool twin) {
        const std::string pre = pick(kPrefixes), f1 = pick(kFillers), f2 = pick(kFillers);
        switch (kind) {
            case 0: {
                const std::string p = product(), v = version();
                return twin ? pre + " remove " + f1 + " " + f2 + " in " + p + " " + v
                            : pre + " " + f1 + " " + f2 + ", remove in " + p + " " + v;
            }
            case 1: {
                const std::string b = bug() + " and " + bug();
                return twin ? pre + " for the " + f1 + " " + f2 + " workaround in " + b
                            : pre + " workaround for " + b + " in the " + f1 + " " + f2;
            }
            case 2: {
                const std::string b = bug() + " and " + bug();
                return twin ? pre + " " + b + " are committed after " + f1 + " " + f2
                            : pre + " " + f1 + " " + f2 + " after " + b + " are committed";
            }
            default: {
                const std::string d = date();
                return twin ? pre + " after " + d + " " + f1 + " " + f2 + " can be removed"
                            : pre + " " + f1 + " " + f2 + " can be removed after " + d;
            }
        }
    }

    std::string ordinary() {
        const std::string pre = pick(kPrefixes), f1 = pick(kFillers), f2 = pick(kFillers);
        switch (below(11)) {
            case 0: return pre + " this should be refactored into the " + f1;
            case 1: return pre + " add javadoc for the " + f1 + " " + f2;
            case 2: return pre + " clean up the " + f1 + " when the " + f2 + " grows";
            case 3: return pre + " we will need to split the " + f1 + " " + f2;
            case 4: return pre + " " + f1 + " " + f2 + " is too slow";
            case 5: return pre + " handle errors once the " + f1 + " is closed";
            case 6: return pre + " should we cache the " + f1 + " " + f2 + "?";
            case 7: return pre + " the " + f1 + " will leak if the " + f2 + " fails";
            case 8: return pre + " rename the " + f1 + " " + f2;
            case 9: return pre + " see https://issues.example.org/browse/" + bug() + " for the " + f1;
            default: return pre + " make the " + f1 + " configurable";
        }
    }

  private:
    std::mt19937_64 rng_;
};

}  // namespace

Dataset generate_synthetic(const SyntheticOptions& options) {
    if (options.positives == 0 || options.positives >= options.comments) {
        throw Error(ErrorKind::InvalidArgument, "synthetic corpus needs 0 < positives < comments");
    }
    Writer w(options.seed);
    const std::size_t twins = (options.comments - options.positives) / 2;

    // 0 = on-hold, 1 = reordered twin, 2 = ordinary debt
    std::vector<int> kinds(options.comments, 2);
    for (std::size_t i = 0; i < options.positives; ++i) kinds[i] = 0;
    for (std::size_t i = 0; i < twins; ++i) kinds[options.positives + i] = 1;
    std::mt19937_64 order_rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    shuffle_in_place(kinds, order_rng);

    Dataset d;
    d.provenance.source = "synthetic:seed=" + std::to_string(options.seed);
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        Comment c;
        c.project = std::string(kProjects[i % kProjects.size()]);
        c.id = c.project + "-" + std::to_string(i + 1);
        if (kinds[i] == 2) {
            c.text = w.ordinary();
            c.label = Label::NotOnHold;
        } else {
            c.text = w.planted(w.below(4), kinds[i] == 1);
            c.label = kinds[i] == 0 ? Label::OnHold : Label::NotOnHold;
        }
        d.comments.push_back(std::move(c));
    }
    return d;
}

}  // namespace onhold
