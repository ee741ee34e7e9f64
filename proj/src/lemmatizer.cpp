// Copyright 2026 The onhold Authors
// SPDX-License-Identifier: Apache-2.0

// Rule-plus-lexicon English lemmatizer. Inflections are undone by suffix
// rules (-s/-es/-ies, -ed, -ing, -er/-est); irregular forms and words the
// rules would damage are looked up first.

#include <algorithm>
#include <cctype>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "onhold/preprocess.hpp"

namespace onhold {

namespace {

using Lexicon = std::unordered_map<std::string_view, std::string_view>;
using WordSet = std::unordered_set<std::string_view>;

const Lexicon& irregular_forms() {
    static const Lexicon table{
        // be / have / do / go
        {"am", "be"}, {"is", "be"}, {"are", "be"}, {"was", "be"}, {"were", "be"}, {"been", "be"}, {"being", "be"},
        {"has", "have"}, {"had", "have"}, {"having", "have"},
        {"does", "do"}, {"did", "do"}, {"done", "do"}, {"doing", "do"},
        {"goes", "go"}, {"went", "go"}, {"gone", "go"}, {"going", "go"},
        // irregular verbs: past and participle forms
        {"arose", "arise"}, {"arisen", "arise"}, {"awoke", "awake"}, {"awoken", "awake"},
        {"bore", "bear"}, {"borne", "bear"}, {"beaten", "beat"}, {"became", "become"},
        {"began", "begin"}, {"begun", "begin"}, {"bent", "bend"}, {"bitten", "bite"},
        {"bled", "bleed"}, {"blew", "blow"}, {"blown", "blow"}, {"broke", "break"}, {"broken", "break"},
        {"bred", "breed"}, {"brought", "bring"}, {"built", "build"}, {"burnt", "burn"},
        {"bought", "buy"}, {"caught", "catch"}, {"chose", "choose"}, {"chosen", "choose"},
        {"clung", "cling"}, {"came", "come"}, {"crept", "creep"}, {"dealt", "deal"}, {"dug", "dig"},
        {"drew", "draw"}, {"drawn", "draw"}, {"dreamt", "dream"}, {"drank", "drink"}, {"drunk", "drink"},
        {"drove", "drive"}, {"driven", "drive"}, {"ate", "eat"}, {"eaten", "eat"}, {"fell", "fall"},
        {"fallen", "fall"}, {"fed", "feed"}, {"felt", "feel"}, {"fought", "fight"}, {"found", "find"},
        {"fled", "flee"}, {"flew", "fly"}, {"flown", "fly"}, {"forbade", "forbid"}, {"forbidden", "forbid"},
        {"forgot", "forget"}, {"forgotten", "forget"}, {"forgave", "forgive"}, {"forgiven", "forgive"},
        {"froze", "freeze"}, {"frozen", "freeze"}, {"got", "get"}, {"gotten", "get"}, {"gave", "give"},
        {"given", "give"}, {"grew", "grow"}, {"grown", "grow"}, {"hung", "hang"}, {"heard", "hear"},
        {"hid", "hide"}, {"hidden", "hide"}, {"held", "hold"}, {"kept", "keep"}, {"knelt", "kneel"},
        {"knew", "know"}, {"known", "know"}, {"laid", "lay"}, {"led", "lead"}, {"leant", "lean"},
        {"leapt", "leap"}, {"learnt", "learn"}, {"lent", "lend"}, {"lain", "lie"}, {"lost", "lose"},
        {"made", "make"}, {"meant", "mean"}, {"met", "meet"}, {"misled", "mislead"}, {"mistook", "mistake"},
        {"mistaken", "mistake"}, {"overcame", "overcome"}, {"overrode", "override"}, {"overridden", "override"},
        {"overwrote", "overwrite"}, {"overwritten", "overwrite"}, {"paid", "pay"}, {"proven", "prove"},
        {"rebuilt", "rebuild"}, {"redid", "redo"}, {"redone", "redo"}, {"reran", "rerun"},
        {"rewrote", "rewrite"}, {"rewritten", "rewrite"}, {"rode", "ride"}, {"ridden", "ride"},
        {"rang", "ring"}, {"rung", "ring"}, {"rose", "rise"}, {"risen", "rise"}, {"ran", "run"},
        {"said", "say"}, {"seen", "see"}, {"sought", "seek"}, {"sold", "sell"}, {"sent", "send"},
        {"shook", "shake"}, {"shaken", "shake"}, {"shone", "shine"}, {"shot", "shoot"}, {"shown", "show"},
        {"shrank", "shrink"}, {"shrunk", "shrink"}, {"sang", "sing"}, {"sung", "sing"}, {"sank", "sink"},
        {"sunk", "sink"}, {"sat", "sit"}, {"slept", "sleep"}, {"slid", "slide"}, {"spoke", "speak"},
        {"spoken", "speak"}, {"spent", "spend"}, {"spun", "spin"}, {"sprang", "spring"}, {"sprung", "spring"},
        {"stood", "stand"}, {"stole", "steal"}, {"stolen", "steal"}, {"stuck", "stick"}, {"stung", "sting"},
        {"struck", "strike"}, {"strove", "strive"}, {"striven", "strive"}, {"swore", "swear"},
        {"sworn", "swear"}, {"swept", "sweep"}, {"swam", "swim"}, {"swum", "swim"}, {"swung", "swing"},
        {"took", "take"}, {"taken", "take"}, {"taught", "teach"}, {"tore", "tear"}, {"torn", "tear"},
        {"told", "tell"}, {"thought", "think"}, {"threw", "throw"}, {"thrown", "throw"},
        {"understood", "understand"}, {"undid", "undo"}, {"undone", "undo"}, {"unwound", "unwind"},
        {"woke", "wake"}, {"woken", "wake"}, {"wore", "wear"}, {"worn", "wear"}, {"wove", "weave"},
        {"woven", "weave"}, {"wept", "weep"}, {"won", "win"}, {"withdrew", "withdraw"},
        {"withdrawn", "withdraw"}, {"wrote", "write"}, {"written", "write"}, {"forbids", "forbid"},
        {"sped", "speed"}, {"spat", "spit"}, {"slung", "sling"}, {"strung", "string"}, {"underwent", "undergo"},
        {"undergone", "undergo"}, {"foresaw", "foresee"}, {"foreseen", "foresee"}, {"upheld", "uphold"},
        {"withheld", "withhold"}, {"misunderstood", "misunderstand"}, {"outran", "outrun"},
        {"overtook", "overtake"}, {"overtaken", "overtake"}, {"overthrew", "overthrow"},
        {"overthrown", "overthrow"}, {"oversaw", "oversee"}, {"overseen", "oversee"}, {"mistook", "mistake"},
        {"dying", "die"}, {"lying", "lie"}, {"tying", "tie"}, {"dies", "die"}, {"died", "die"},
        {"lies", "lie"}, {"lied", "lie"}, {"ties", "tie"}, {"tied", "tie"},
        // irregular nouns
        {"children", "child"}, {"men", "man"}, {"women", "woman"}, {"mice", "mouse"}, {"feet", "foot"},
        {"teeth", "tooth"}, {"geese", "goose"}, {"oxen", "ox"}, {"indices", "index"}, {"vertices", "vertex"},
        {"matrices", "matrix"}, {"appendices", "appendix"}, {"analyses", "analysis"}, {"axes", "axis"},
        {"crises", "crisis"}, {"hypotheses", "hypothesis"}, {"theses", "thesis"}, {"diagnoses", "diagnosis"},
        {"parentheses", "parenthesis"}, {"synopses", "synopsis"}, {"ellipses", "ellipsis"},
        {"criteria", "criterion"}, {"phenomena", "phenomenon"}, {"leaves", "leaf"}, {"lives", "life"},
        {"knives", "knife"}, {"wives", "wife"}, {"halves", "half"}, {"selves", "self"},
        {"shelves", "shelf"}, {"wolves", "wolf"}, {"thieves", "thief"}, {"loaves", "loaf"},
        {"aliases", "alias"}, {"statuses", "status"}, {"buses", "bus"}, {"viruses", "virus"},
        {"caches", "cache"}, {"bases", "base"}, {"heroes", "hero"}, {"echoes", "echo"},
        {"potatoes", "potato"}, {"vetoes", "veto"}, {"quizzes", "quiz"}, {"bonuses", "bonus"},
        {"corpora", "corpus"}, {"schemata", "schema"}, {"stimuli", "stimulus"}, {"radii", "radius"},
        // comparatives
        {"better", "good"}, {"best", "good"}, {"worse", "bad"}, {"worst", "bad"}, {"further", "far"},
        {"farther", "far"}, {"furthest", "far"}, {"farthest", "far"},
    };
    return table;
}

// Words that look inflected but are already in dictionary form.
const WordSet& invariant_words() {
    static const WordSet words{
        "this", "its", "his", "hers", "ours", "yours", "theirs", "us", "as", "thus", "plus", "minus",
        "always", "perhaps", "towards", "afterwards", "sometimes", "besides", "whereas", "unless", "less",
        "yes", "news", "series", "species", "lens", "alias", "canvas", "atlas", "bias", "gas", "christmas",
        "pass", "class", "process", "access", "address", "success", "progress", "express",
        "status", "focus", "bonus", "campus", "virus", "corpus", "census", "radius", "consensus", "bus",
        "analysis", "basis", "axis", "chassis", "tennis", "various", "previous", "obvious", "numerous",
        "ambiguous", "anonymous", "synchronous", "asynchronous", "continuous", "contiguous", "dangerous",
        "spurious", "erroneous", "miscellaneous", "simultaneous", "serious", "curious", "famous",
        "thing", "string", "nothing", "something", "anything", "everything", "during", "ring", "king",
        "sing", "spring", "swing", "sting", "wing", "ping", "bring", "ceiling", "morning", "evening",
        "warning", "encoding", "padding", "pending", "heading", "wedding", "pudding", "awning",
        "need", "seed", "speed", "feed", "bed", "red", "shed", "hundred", "indeed", "embed", "proceed",
        "exceed", "succeed", "bleed", "breed", "greed", "weed", "deed", "reed", "shred", "sled", "wed",
        "naked", "wicked", "sacred", "ragged", "rugged", "kindred", "hatred", "sped", "led", "fed",
        "however", "whatever", "whenever", "wherever", "whichever", "never", "ever", "over", "under",
        "after", "other", "another", "either", "neither", "rather", "whether", "together", "order",
        "number", "user", "server", "parser", "filter", "buffer", "pointer", "helper", "header",
        "footer", "layer", "manager", "handler", "listener", "container", "wrapper", "adapter", "member",
        "interest", "test", "best", "rest", "request", "latest", "manifest", "forest", "honest", "modest",
        "suggest", "digest", "harvest", "contest", "protest", "earnest", "interpreter",
    };
    return words;
}

// Base forms ending in 'e' that the -ed/-ing rules cannot restore on their own.
const WordSet& e_final_bases() {
    static const WordSet words{
        "close", "delete", "release", "compile", "define", "ignore", "include", "require", "provide",
        "cache", "type", "range", "change", "message", "instance", "reference", "sequence", "style",
        "store", "arrange", "exchange", "charge", "damage", "manage", "package", "stage", "cause",
        "pause", "compare", "declare", "prepare", "share", "care", "restore", "score", "explore",
        "expire", "desire", "retire", "acquire", "prune", "tune", "refine", "combine", "determine",
        "examine", "imagine", "machine", "inline", "outline", "clone", "phone", "postpone", "zone",
        "tone", "hope", "scope", "escape", "shape", "swipe", "quote", "vote", "promote", "devote",
        "complete", "compete", "obsolete", "invite", "unite", "excite", "cite", "recite", "ignite",
        "write", "decode", "encode", "invoke", "revoke", "evoke", "provoke", "welcome", "become",
        "overcome", "reuse", "misuse", "refuse", "confuse", "abuse", "excuse", "accuse", "amuse",
        "diffuse", "infuse", "peruse", "fuse", "use", "snore", "adore", "implore", "deplore",
        "chore", "core", "bore", "movie", "cookie", "rookie", "zombie", "freebie", "goalie",
        "one", "none", "done", "engine", "line", "pipeline", "baseline", "deadline", "timeline",
        "online", "offline", "routine", "genuine", "mine", "fine", "shine", "wine", "spine",
        "file", "while", "profile", "mobile", "tile", "smile", "pile", "mile", "style", "whole",
        "role", "hole", "pole", "sole", "console", "module", "rule", "schedule", "capsule",
        "lease", "please", "increase", "decrease", "erase", "phase", "chase", "purchase", "tease", "ease",
        "raise", "praise", "promise", "advise", "revise", "surprise", "comprise", "exercise",
        "otherwise", "expertise", "franchise", "premise", "license", "sense", "response", "expense",
        "dense", "tense", "parse", "traverse", "reverse", "collapse", "eclipse", "pulse", "false", "else",
        "notice", "practice", "office", "device", "service", "voice", "choice", "price", "slice",
        "splice", "advice", "juice", "piece", "niece", "source", "force", "enforce", "course",
        "balance", "enhance", "announce", "pronounce", "convince", "bounce", "since", "fence", "dance",
        "glance", "advance", "finance", "chance", "instance", "distance", "evidence", "sentence",
        "produce", "reduce", "introduce", "induce", "deduce", "replace", "place", "space", "trace",
        "race", "face", "surface", "interface", "grace", "brace", "embrace",
    };
    return words;
}

const WordSet& comparable_adjectives() {
    static const WordSet words{
        "big", "small", "fast", "slow", "easy", "hard", "late", "early", "large", "long", "short",
        "high", "low", "new", "old", "simple", "safe", "clean", "nice", "few", "strict", "wide", "deep",
        "cheap", "quick", "close", "loose", "tight", "fine", "great", "heavy", "light", "dark", "bright",
        "smart", "weak", "strong", "thin", "thick", "young", "rich", "poor", "cool", "warm", "hot",
        "cold", "soft", "ugly", "pretty", "busy", "lazy", "happy", "tiny", "huge", "narrow", "shallow",
        "sane", "clear", "dirty", "messy", "nasty", "tidy", "neat", "plain", "rare", "near", "far",
        "sure", "true", "wise", "crazy", "silly", "fancy", "lean", "slim", "fat", "flat", "broad",
        "steep", "sharp", "dull", "quiet", "loud", "hungry", "healthy", "lucky", "tricky", "risky",
        "sloppy", "handy", "dumb", "stupid", "clever", "robust", "terse", "verbose", "brief",
    };
    return words;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool ends_with(std::string_view s, std::string_view suffix) { return s.ends_with(suffix); }

bool is_alpha(std::string_view w) {
    return !w.empty() && std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isalpha(c); });
}

// Decides whether a stem left by removing -ed/-ing lost a silent 'e'.
bool restores_e(std::string_view stem) {
    const std::size_t n = stem.size();
    if (n < 2) return false;
    if (e_final_bases().contains(std::string(stem) + "e")) return true;
    const char last = stem[n - 1];
    const char prev = stem[n - 2];
    auto tail = [&](std::string_view s) { return ends_with(stem, s); };

    // short consonant-vowel-consonant stems: us(e), nam(e), tim(e), typ(e)
    if (n <= 3 && !is_vowel(last) && last != 'w' && last != 'x' && last != 'y') {
        bool vowel_before = is_vowel(prev) || prev == 'y';
        bool short_open = n == 2 || !(is_vowel(stem[0]) || stem[0] == 'y');
        if (vowel_before && short_open) return true;
    }
    switch (last) {
        case 'v':
        case 'u':
            return true;
        case 'z':
            return prev != 'z';
        case 'c':
            return !tail("sync");
        case 'g':
            if (prev == 'd' || prev == 'r') return true;  // acknowledg(e), merg(e)
            if (tail("ang")) return tail("chang") || tail("rang") || tail("trang");
            if (tail("eng")) return true;  // challeng(e)
            return is_vowel(prev);         // manag(e), oblig(e)
        case 'l':
            if (!is_vowel(prev) && prev != 'l' && prev != 'r' && prev != 'w') return true;  // handl(e)
            if (tail("ail") || tail("oil") || tail("eil") || tail("uil") || tail("ool") || tail("oul")) return false;
            return prev == 'i' || prev == 'o' || prev == 'u';
        case 's':
            if (prev == 's') return false;
            if (prev == 'r' || prev == 'n' || prev == 'p' || prev == 'l') return true;  // pars(e), licens(e)
            if (tail("aus")) return true;
            if (prev == 'u') return false;  // focus
            return prev == 'a' || prev == 'o' || prev == 'i' || prev == 'y' || prev == 'e';
        case 't':
            if (tail("eat") || tail("oat") || tail("eet")) return false;
            if (prev == 'a') return true;         // creat(e), updat(e)
            if (prev == 'u') return n >= 4;       // comput(e)
            return false;
        case 'd':
            if (tail("aid") || tail("oid") || tail("uid") || tail("ead") || tail("oad") || tail("eed")) return false;
            return prev == 'i' || prev == 'o' || prev == 'u' || prev == 'a';  // provid(e), explod(e)
        case 'm':
            if (tail("eam") || tail("oam") || tail("aim") || tail("oom") || tail("eem")) return false;
            return prev == 'u' || prev == 'a' || prev == 'o' || prev == 'i';  // assum(e), renam(e)
        case 'n':
            if (tail("ain") || tail("oin") || tail("uin") || tail("ein")) return false;
            return prev == 'i';  // defin(e)
        case 'r':
            if (tail("air") || tail("oir") || tail("eir") || tail("our") || tail("ear") || tail("oar") ||
                tail("iar")) {
                return false;
            }
            return prev == 'i' || prev == 'u' || prev == 'a';  // requir(e), configur(e), declar(e)
        case 'k':
            if (tail("ook") || tail("eak") || tail("oak") || tail("eek")) return false;
            return prev == 'o' || prev == 'a' || prev == 'i';  // invok(e)
        case 'b':
            return prev == 'i';  // describ(e)
        default:
            return false;
    }
}

bool keeps_double(std::string_view stem) {
    static const WordSet keep{"add", "err", "ebb", "egg", "odd", "inn", "purr", "buzz", "fizz", "jazz"};
    const char last = stem.back();
    return last == 'l' || last == 's' || last == 'z' || last == 'f' || keep.contains(stem);
}

// Undo -ed / -ing given the bare stem.
std::string verb_base(std::string_view stem) {
    const std::size_t n = stem.size();
    if (n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) && !keeps_double(stem)) {
        return std::string(stem.substr(0, n - 1));  // stopp -> stop
    }
    if (restores_e(stem)) return std::string(stem) + "e";
    return std::string(stem);
}

std::string plural_base(std::string_view w) {
    const std::size_t n = w.size();
    std::string_view without_s = w.substr(0, n - 1);
    if (e_final_bases().contains(without_s)) return std::string(without_s);
    if (ends_with(w, "ies") && n > 4) return std::string(w.substr(0, n - 3)) + "y";
    if (ends_with(w, "sses") || ends_with(w, "shes") || ends_with(w, "ches") || ends_with(w, "xes") ||
        ends_with(w, "zzes")) {
        return std::string(w.substr(0, n - 2));
    }
    if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is") || ends_with(w, "ous")) return std::string(w);
    return std::string(without_s);
}

std::optional<std::string> comparative_base(std::string_view w) {
    std::string_view stem;
    if (ends_with(w, "est") && w.size() > 5) {
        stem = w.substr(0, w.size() - 3);
    } else if (ends_with(w, "er") && w.size() > 4) {
        stem = w.substr(0, w.size() - 2);
    } else {
        return std::nullopt;
    }
    const auto& adjectives = comparable_adjectives();
    std::string s(stem);
    if (adjectives.contains(s)) return s;
    if (s.size() >= 3 && s.back() == s[s.size() - 2] && adjectives.contains(s.substr(0, s.size() - 1))) {
        return s.substr(0, s.size() - 1);  // bigg -> big
    }
    if (adjectives.contains(s + "e")) return s + "e";  // larg -> large
    if (s.back() == 'i') {
        std::string y = s.substr(0, s.size() - 1) + "y";  // easi -> easy
        if (adjectives.contains(y)) return y;
    }
    return std::nullopt;
}

}  // namespace

std::string lemmatize_word(std::string_view word) {
    std::string w(word);
    std::transform(w.begin(), w.end(), w.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (!is_alpha(w)) return w;

    if (auto it = irregular_forms().find(w); it != irregular_forms().end()) return std::string(it->second);
    if (w.size() <= 3 || invariant_words().contains(w)) return w;

    const std::size_t n = w.size();
    if (ends_with(w, "ied") && n > 4) return w.substr(0, n - 3) + "y";
    if (ends_with(w, "eed")) return w.substr(0, n - 1);  // agreed -> agree
    if (ends_with(w, "ed") && n - 2 >= 2) return verb_base(std::string_view(w).substr(0, n - 2));
    if (ends_with(w, "ing") && n - 3 >= 2) return verb_base(std::string_view(w).substr(0, n - 3));
    if (auto adj = comparative_base(w)) return *adj;
    if (w.back() == 's') return plural_base(w);
    return w;
}

std::string lemmatize(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (!std::isalnum(static_cast<unsigned char>(text[i]))) {
            out.push_back(text[i]);
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
        std::string_view word = text.substr(i, j - i);
        if (i > 0 && text[i - 1] == '@' && is_placeholder(text.substr(i - 1, j - i + 1))) {
            out.append(word);
        } else {
            out.append(lemmatize_word(word));
        }
        i = j;
    }
    return out;
}

}  // namespace onhold
