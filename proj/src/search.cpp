#include "spl/search.hpp"

#include <algorithm>
#include <deque>

#include "spl/error.hpp"
#include "spl/position.hpp"

namespace spl {

namespace {

void collect_meta_labels(Formula f, const LogicSpec& l,
                         std::set<std::string>& out) {
    switch (f.kind()) {
        case Formula::Kind::Var:
        case Formula::Kind::Top:
            return;
        case Formula::Kind::And:
            collect_meta_labels(f.left(), l, out);
            collect_meta_labels(f.right(), l, out);
            return;
        case Formula::Kind::Dia:
            if (l.mod_metavars().count(f.label().name()))
                out.insert(f.label().name());
            collect_meta_labels(f.body(), l, out);
            return;
    }
}

} // namespace

Saturation::Saturation(LogicSpec l, Formula origin, int size_bound,
                       int step_bound, const std::set<Symbol>& alphabet)
    : logic_(std::move(l)), origin_(origin) {
    if (size_bound < 1 || step_bound < 1)
        throw Error("saturation bounds must be >= 1");

    std::set<Symbol> sigma = alphabet;
    origin.collect_symbols(sigma);
    for (const Symbol& s : logic_.concrete_symbols()) sigma.insert(s);
    alphabet_.assign(sigma.begin(), sigma.end());

    std::deque<Formula> queue;
    entries_.emplace(origin, Entry{std::nullopt, {}, 0});
    queue.push_back(origin);

    // Replacing the redex s by r changes the size by r - s; skipping
    // oversized results before building them keeps the frontier cheap.
    auto offer = [&](Formula f, const Position& pos, Formula s, Formula r,
                     DeepStep st, int depth) {
        if (f.size() - s.size() + r.size() > size_bound) return;
        Formula g = replace_at(f, pos, r);
        auto [it, fresh] =
            entries_.try_emplace(g, Entry{f, std::move(st), depth});
        (void)it;
        if (fresh) queue.push_back(g);
    };

    while (!queue.empty()) {
        Formula f = queue.front();
        queue.pop_front();
        int depth = entries_.at(f).depth;
        if (depth >= step_bound) continue;

        for (const Position& pos : all_positions(f)) {
            Formula s = subformula_at(f, pos);
            offer(f, pos, s, Formula::conj(s, s), DeepStep::and_dup(pos),
                  depth + 1);
            if (s.is_and()) {
                offer(f, pos, s, s.left(), DeepStep::and_e1(pos), depth + 1);
                offer(f, pos, s, s.right(), DeepStep::and_e2(pos), depth + 1);
            }
            if (!s.is_top())
                offer(f, pos, s, Formula::top(), DeepStep::top_i(pos),
                      depth + 1);

            for (const AxiomSchema& sch : logic_.schemata()) {
                Substitution base;
                if (!match(sch.lhs, s, logic_.mod_metavars(), base)) continue;
                std::set<std::string> labels;
                collect_meta_labels(sch.rhs, logic_, labels);
                std::vector<std::string> open;
                for (const std::string& m : labels)
                    if (!base.mod(m)) open.push_back(m);
                if (open.empty()) {
                    offer(f, pos, s, base.apply(sch.rhs),
                          DeepStep::axiom(pos, sch.id, base), depth + 1);
                    continue;
                }
                if (alphabet_.empty()) continue;
                std::vector<std::size_t> idx(open.size(), 0);
                for (;;) {
                    Substitution sub = base;
                    for (std::size_t i = 0; i < open.size(); ++i)
                        sub.set_mod(open[i], alphabet_[idx[i]]);
                    Formula r = sub.apply(sch.rhs);
                    offer(f, pos, s, r,
                          DeepStep::axiom(pos, sch.id, std::move(sub)),
                          depth + 1);
                    std::size_t k = 0;
                    while (k < idx.size() && ++idx[k] == alphabet_.size())
                        idx[k++] = 0;
                    if (k == idx.size()) break;
                }
            }
        }
    }
}

std::optional<DeepDerivation> Saturation::derivation_to(Formula f) const {
    auto it = entries_.find(f);
    if (it == entries_.end()) return std::nullopt;
    std::vector<Formula> fs{f};
    std::vector<DeepStep> sts;
    Formula cur = f;
    for (;;) {
        const Entry& e = entries_.at(cur);
        if (!e.parent) break;
        sts.push_back(e.step);
        cur = *e.parent;
        fs.push_back(cur);
    }
    std::reverse(fs.begin(), fs.end());
    std::reverse(sts.begin(), sts.end());
    return DeepDerivation{std::move(fs), std::move(sts)};
}

SearchResult bounded_forward_search(const LogicSpec& l, const Sequent& s,
                                    int size_bound, int step_bound) {
    Saturation sat(l, s.lhs, size_bound, step_bound, s.rhs.symbols());
    if (!sat.reached(s.rhs)) return {false, std::nullopt};
    return {true, sat.derivation_to(s.rhs)};
}

} // namespace spl
