#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "ffstat/stats.hpp"

namespace ffstat {

namespace {

using Perm = std::vector<unsigned>;

Perm compose(const Perm& g, const Perm& h) {
    // (g h)(i) = g(h(i))
    Perm out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) out[i] = g[h[i]];
    return out;
}

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidGroup, msg); }

std::string perm_text(const Perm& g) {
    std::string out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(g[i] + 1);
    }
    return out;
}

std::uint64_t parse_uint(std::string_view s, const std::string& what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        invalid("expected a non-negative integer for " + what + ", got '" + std::string(s) + "'");
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

GroupSpec GroupSpec::symmetric(unsigned d) {
    if (d < 1) invalid("degree must be at least 1");
    GroupSpec g;
    g.d_ = d;
    g.nu_ = 1;
    g.symmetric_ = true;
    return g;
}

GroupSpec GroupSpec::explicit_group(unsigned d, std::uint64_t nu, std::vector<GroupElement> elements) {
    if (d < 1) invalid("degree must be at least 1");
    if (nu < 1) invalid("nu must be at least 1");
    if (elements.empty()) invalid("group has no elements");
    std::map<Perm, std::uint64_t> label_of;
    for (const auto& el : elements) {
        if (el.perm.size() != d) invalid("permutation " + perm_text(el.perm) + " does not act on " + std::to_string(d) + " letters");
        std::vector<bool> hit(d, false);
        for (unsigned x : el.perm) {
            if (x >= d || hit[x]) invalid("'" + perm_text(el.perm) + "' is not a permutation");
            hit[x] = true;
        }
        if (el.label >= nu) invalid("label " + std::to_string(el.label) + " is not reduced mod " + std::to_string(nu));
        if (!label_of.emplace(el.perm, el.label).second) invalid("duplicate element " + perm_text(el.perm));
    }
    Perm id(d);
    std::iota(id.begin(), id.end(), 0u);
    auto id_it = label_of.find(id);
    if (id_it == label_of.end()) invalid("identity is missing");
    if (id_it->second != 0) invalid("identity must have label 0");
    for (const auto& [g, lg] : label_of)
        for (const auto& [h, lh] : label_of) {
            auto it = label_of.find(compose(g, h));
            if (it == label_of.end()) invalid("not closed: " + perm_text(g) + " * " + perm_text(h) + " is missing");
            if (it->second != (lg + lh) % nu)
                invalid("labels are not a homomorphism at " + perm_text(g) + " * " + perm_text(h));
        }
    GroupSpec out;
    out.d_ = d;
    out.nu_ = nu;
    out.symmetric_ = false;
    out.elements_.reserve(label_of.size());
    for (auto& [perm, label] : label_of) out.elements_.push_back({perm, label});
    return out;
}

GroupSpec GroupSpec::cyclic(unsigned d) {
    if (d < 1) invalid("degree must be at least 1");
    std::vector<GroupElement> els;
    for (unsigned s = 0; s < d; ++s) {
        Perm g(d);
        for (unsigned i = 0; i < d; ++i) g[i] = (i + s) % d;
        els.push_back({std::move(g), 0});
    }
    return explicit_group(d, 1, std::move(els));
}

GroupSpec GroupSpec::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::optional<unsigned> d;
    std::optional<std::uint64_t> nu;
    std::vector<GroupElement> els;
    while (std::getline(in, raw)) {
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (!d) {
            std::istringstream hdr{std::string(line)};
            std::string tok;
            while (hdr >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) invalid("bad header token '" + tok + "'");
                auto key = tok.substr(0, eq);
                auto val = std::string_view(tok).substr(eq + 1);
                if (key == "d") d = static_cast<unsigned>(parse_uint(val, "d"));
                else if (key == "nu") nu = parse_uint(val, "nu");
                else invalid("unknown header key '" + key + "'");
            }
            if (!d) invalid("header must set d");
            if (!nu) nu = 1;
            continue;
        }
        auto bar = line.find('|');
        if (bar == std::string_view::npos) invalid("element line lacks '| label': " + std::string(line));
        std::istringstream imgs{std::string(line.substr(0, bar))};
        Perm g;
        std::string tok;
        while (imgs >> tok) {
            auto v = parse_uint(tok, "image");
            if (v < 1) invalid("images are 1-based");
            g.push_back(static_cast<unsigned>(v - 1));
        }
        els.push_back({std::move(g), parse_uint(trim(line.substr(bar + 1)), "label")});
    }
    if (!d) invalid("missing header line 'd=<int> nu=<int>'");
    return explicit_group(*d, *nu, std::move(els));
}

GroupSpec GroupSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open group file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string GroupSpec::to_text() const {
    std::string out = "d=" + std::to_string(d_) + " nu=" + std::to_string(nu_) + "\n";
    for (const auto& el : elements_) out += perm_text(el.perm) + " | " + std::to_string(el.label) + "\n";
    return out;
}

std::string GroupSpec::describe() const {
    if (symmetric_) return "symmetric(d=" + std::to_string(d_) + ")";
    return "explicit(d=" + std::to_string(d_) + ",nu=" + std::to_string(nu_) + ",order=" +
           std::to_string(elements_.size()) + ")";
}

}  // namespace ffstat
