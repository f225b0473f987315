#include "gpsel/choice.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace gpsel {

std::string_view to_string(SlotRole r) {
    switch (r) {
        case SlotRole::ObjectiveCoefficient: return "objective_coefficient";
        case SlotRole::ConstraintCoefficient: return "constraint_coefficient";
        case SlotRole::Exponent: return "exponent";
    }
    return "unknown";
}

std::optional<SlotRole> parse_role(std::string_view text) {
    for (auto r : {SlotRole::ObjectiveCoefficient, SlotRole::ConstraintCoefficient, SlotRole::Exponent}) {
        if (to_string(r) == text) return r;
    }
    return std::nullopt;
}

std::string BinaryAssignment::to_string() const {
    std::string s;
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

BinaryAssignment BinaryAssignment::parse(std::string_view text) {
    if (text.size() != 2 && text.size() != 3) throw DomainError("bit pattern must have 2 or 3 digits: '" + std::string(text) + "'");
    BinaryAssignment a;
    for (char ch : text) {
        if (ch != '0' && ch != '1') throw DomainError("bit pattern may only contain 0 and 1: '" + std::string(text) + "'");
        a.bits.push_back(ch == '1' ? 1 : 0);
    }
    return a;
}

namespace {

BinaryAssignment pattern(std::initializer_list<std::uint8_t> bits) { return BinaryAssignment{std::vector<std::uint8_t>(bits)}; }

bool is_binary(const BinaryAssignment& a) {
    return std::all_of(a.bits.begin(), a.bits.end(), [](std::uint8_t b) { return b <= 1; });
}

}  // namespace

std::vector<BinaryAssignment> encoding_patterns(std::size_t k) {
    if (k < 1 || k > kMaxCandidates) throw DomainError("candidate set size must be in [1, 8], got " + std::to_string(k));
    switch (k) {
        case 1: return {pattern({0, 0})};
        case 2: return {pattern({1, 0}), pattern({0, 0})};
        case 3: return {pattern({1, 0}), pattern({0, 1}), pattern({0, 0})};
        case 4: return {pattern({1, 0}), pattern({0, 1}), pattern({0, 0}), pattern({1, 1})};
        case 5:
            return {pattern({1, 0, 0}), pattern({0, 1, 0}), pattern({0, 0, 1}), pattern({0, 0, 0}), pattern({1, 1, 1})};
        default: break;
    }
    std::vector<BinaryAssignment> out{pattern({1, 0, 0}), pattern({0, 1, 0}), pattern({0, 0, 1}),
                                      pattern({1, 1, 0}), pattern({1, 0, 1}), pattern({0, 1, 1})};
    if (k >= 7) out.push_back(pattern({0, 0, 0}));
    if (k == 8) out.push_back(pattern({1, 1, 1}));
    return out;
}

std::vector<BinaryAssignment> valid_assignments(const CandidateSet& set) {
    auto all = encoding_patterns(set.size());
    std::erase_if(all, [&](const BinaryAssignment& p) {
        return std::find(set.excluded.begin(), set.excluded.end(), p) != set.excluded.end();
    });
    return all;
}

namespace {

void require_admitted(const CandidateSet& set, const BinaryAssignment& a) {
    const auto valid = valid_assignments(set);
    if (std::find(valid.begin(), valid.end(), a) == valid.end()) {
        throw DomainError("bit pattern '" + a.to_string() + "' is not a valid assignment of set '" + set.name + "'");
    }
}

}  // namespace

double selector_polynomial(const CandidateSet& set, const BinaryAssignment& a) {
    require_admitted(set, a);
    // Sum over candidates of a_i * prod_j (z_j or 1 - z_j), one product per pattern.
    const auto terms = encoding_patterns(set.size());
    double value = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        double product = set.candidates[i];
        for (std::size_t j = 0; j < a.bits.size(); ++j) {
            const double z = a.bits[j];
            product *= terms[i].bits[j] ? z : 1.0 - z;
        }
        value += product;
    }
    return value;
}

std::size_t selected_index(const CandidateSet& set, const BinaryAssignment& a) {
    require_admitted(set, a);
    const auto terms = encoding_patterns(set.size());
    return static_cast<std::size_t>(std::find(terms.begin(), terms.end(), a) - terms.begin());
}

const CandidateSet* ChoiceGp::find_set(std::string_view name) const {
    for (const auto& s : sets) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

bool ChoiceGp::is_fixed() const {
    return std::all_of(sets.begin(), sets.end(), [](const CandidateSet& s) { return s.size() == 1; });
}

ChoiceGp from_problem(const GpProblem& g) {
    auto lift = [](const Posynomial& p) {
        std::vector<TemplateTerm> out;
        for (const auto& m : p.terms) {
            TemplateTerm t{Slot::literal(m.coefficient), {}};
            for (double e : m.exponents) t.exponents.push_back(Slot::literal(e));
            out.push_back(std::move(t));
        }
        return out;
    };
    ChoiceGp cg;
    cg.variables = g.variables;
    cg.objective = lift(g.objective);
    for (const auto& c : g.constraints) cg.constraints.push_back({lift(c.body), c.bound});
    return cg;
}

namespace {

struct Checker {
    const ChoiceGp& cg;
    bool values;
    std::vector<Violation> out;
    std::vector<std::size_t> uses;

    void add(std::string loc, std::string msg) { out.push_back({std::move(loc), std::move(msg)}); }

    void slot(const Slot& s, SlotRole expected, bool coefficient, const std::string& loc) {
        if (!s.is_ref()) {
            const double v = s.literal_value();
            if (values && !std::isfinite(v)) add(loc, "value is not finite");
            if (values && coefficient && std::isfinite(v) && !(v > 0.0)) add(loc, "coefficient must be positive");
            return;
        }
        const auto& name = s.set_name();
        const auto it = std::find_if(cg.sets.begin(), cg.sets.end(), [&](const CandidateSet& c) { return c.name == name; });
        if (it == cg.sets.end()) {
            add(loc, "references undefined candidate set '" + name + "'");
            return;
        }
        ++uses[static_cast<std::size_t>(it - cg.sets.begin())];
        if (it->role != expected) {
            add(loc, "candidate set '" + name + "' has role " + std::string(to_string(it->role)) + " but the slot needs " +
                         std::string(to_string(expected)));
        }
    }

    void terms(const std::vector<TemplateTerm>& ts, SlotRole coef_role, const std::string& loc) {
        if (ts.empty()) add(loc, "posynomial has no terms");
        for (std::size_t t = 0; t < ts.size(); ++t) {
            const std::string tl = loc + ".term[" + std::to_string(t) + "]";
            slot(ts[t].coefficient, coef_role, true, tl + ".coefficient");
            if (ts[t].exponents.size() != cg.variables.size()) {
                add(tl, "has " + std::to_string(ts[t].exponents.size()) + " exponents for " +
                            std::to_string(cg.variables.size()) + " variables");
                continue;
            }
            for (std::size_t j = 0; j < ts[t].exponents.size(); ++j) {
                slot(ts[t].exponents[j], SlotRole::Exponent, false, tl + ".exponent[" + std::to_string(j) + "]");
            }
        }
    }

    void run() {
        uses.assign(cg.sets.size(), 0);
        if (cg.variables.empty()) add("variables", "at least one variable is required");
        for (std::size_t j = 0; j < cg.variables.size(); ++j) {
            if (cg.variables[j].index != j) add("variables[" + std::to_string(j) + "]", "index is not dense");
            for (std::size_t k = 0; k < j; ++k) {
                if (cg.variables[k].name == cg.variables[j].name) {
                    add("variables[" + std::to_string(j) + "]", "duplicate variable name '" + cg.variables[j].name + "'");
                }
            }
        }
        terms(cg.objective, SlotRole::ObjectiveCoefficient, "objective");
        for (std::size_t i = 0; i < cg.constraints.size(); ++i) {
            const std::string loc = "constraint[" + std::to_string(i + 1) + "]";
            terms(cg.constraints[i].terms, SlotRole::ConstraintCoefficient, loc);
            const double b = cg.constraints[i].bound;
            if (!std::isfinite(b) || !(b > 0.0)) add(loc + ".bound", "bound must be positive and finite");
        }
        for (std::size_t s = 0; s < cg.sets.size(); ++s) set(s);
    }

    void set(std::size_t s) {
        const auto& cs = cg.sets[s];
        const std::string loc = "candidate_set[" + std::to_string(s) + "]";
        if (cs.name.empty()) add(loc, "name is empty");
        for (std::size_t k = 0; k < s; ++k) {
            if (cg.sets[k].name == cs.name) add(loc, "duplicate candidate set name '" + cs.name + "'");
        }
        if (uses[s] == 0) add(loc, "candidate set '" + cs.name + "' is never referenced");
        if (cs.size() < 1 || cs.size() > kMaxCandidates) {
            add(loc, "candidate set '" + cs.name + "' must have 1 to 8 values, has " + std::to_string(cs.size()));
            return;
        }
        const auto encoding = encoding_patterns(cs.size());
        for (std::size_t e = 0; e < cs.excluded.size(); ++e) {
            const auto& p = cs.excluded[e];
            if (p.bits.size() != cs.bit_count() || !is_binary(p) ||
                std::find(encoding.begin(), encoding.end(), p) == encoding.end()) {
                add(loc + ".exclude[" + std::to_string(e) + "]",
                    "pattern '" + p.to_string() + "' is not part of the encoding for " + std::to_string(cs.size()) +
                        " candidates");
            }
        }
        if (valid_assignments(cs).empty()) add(loc, "exclusions leave no valid assignment for '" + cs.name + "'");
        if (!values) return;
        for (std::size_t v = 0; v < cs.size(); ++v) {
            const double x = cs.candidates[v];
            const std::string vl = loc + ".values[" + std::to_string(v) + "]";
            if (!std::isfinite(x)) {
                add(vl, "value is not finite");
            } else if (cs.role != SlotRole::Exponent && !(x > 0.0)) {
                add(vl, "coefficient candidate of '" + cs.name + "' must be positive");
            }
        }
    }
};

}  // namespace

std::vector<Violation> validate_structure(const ChoiceGp& cg) {
    Checker c{cg, false, {}, {}};
    c.run();
    return c.out;
}

std::vector<Violation> validate(const ChoiceGp& cg) {
    Checker c{cg, true, {}, {}};
    c.run();
    return c.out;
}

std::string bit_string(const Choice& choice) {
    std::string s;
    for (const auto& a : choice) s += a.to_string();
    return s;
}

GpProblem expand(const ChoiceGp& cg, const Choice& choice) {
    if (choice.size() != cg.sets.size()) {
        throw DomainError("choice has " + std::to_string(choice.size()) + " assignments for " +
                          std::to_string(cg.sets.size()) + " candidate sets");
    }
    std::vector<double> chosen;
    for (std::size_t s = 0; s < cg.sets.size(); ++s) chosen.push_back(selector_polynomial(cg.sets[s], choice[s]));

    auto resolve = [&](const Slot& slot) {
        if (!slot.is_ref()) return slot.literal_value();
        const CandidateSet* set = cg.find_set(slot.set_name());
        if (set == nullptr) throw DomainError("undefined candidate set '" + slot.set_name() + "'");
        return chosen[static_cast<std::size_t>(set - cg.sets.data())];
    };
    auto lower = [&](const std::vector<TemplateTerm>& ts, const std::string& loc) {
        Posynomial p;
        for (std::size_t t = 0; t < ts.size(); ++t) {
            Monomial m{resolve(ts[t].coefficient), {}};
            if (!(m.coefficient > 0.0)) {
                std::ostringstream msg;
                msg << loc << ".term[" << t << "] coefficient resolves to " << m.coefficient;
                throw RejectedExpansion(msg.str());
            }
            for (const auto& e : ts[t].exponents) m.exponents.push_back(resolve(e));
            p.terms.push_back(std::move(m));
        }
        return p;
    };

    GpProblem g;
    g.variables = cg.variables;
    g.objective = lower(cg.objective, "objective");
    for (std::size_t i = 0; i < cg.constraints.size(); ++i) {
        g.constraints.push_back({lower(cg.constraints[i].terms, "constraint[" + std::to_string(i + 1) + "]"),
                                 cg.constraints[i].bound});
    }
    return g;
}

std::size_t combination_count(const ChoiceGp& cg) {
    std::size_t total = 1;
    for (const auto& s : cg.sets) {
        const std::size_t k = valid_assignments(s).size();
        if (k != 0 && total > std::numeric_limits<std::size_t>::max() / k) return std::numeric_limits<std::size_t>::max();
        total *= k;
    }
    return total;
}

namespace {

struct Outcome {
    bool rejected{false};
    SolveStatus status{SolveStatus::NumericalError};
    double z{0.0};
};

// Mixed-radix decode; the last set varies fastest.
Choice decode(std::size_t index, const std::vector<std::vector<BinaryAssignment>>& valid) {
    Choice c(valid.size());
    for (std::size_t s = valid.size(); s-- > 0;) {
        c[s] = valid[s][index % valid[s].size()];
        index /= valid[s].size();
    }
    return c;
}

}  // namespace

ChoiceReport solve_choice(const ChoiceGp& cg, const ChoiceSettings& cfg) {
    check_settings(cfg.solver);
    if (const auto v = validate_structure(cg); !v.empty()) throw DomainError("invalid choice model: " + describe(v));

    std::vector<std::vector<BinaryAssignment>> valid;
    for (const auto& s : cg.sets) valid.push_back(valid_assignments(s));
    const std::size_t total = combination_count(cg);
    if (total > cfg.max_combinations) {
        throw DomainError("choice model has " + std::to_string(total) + " combinations, above the cap of " +
                          std::to_string(cfg.max_combinations));
    }

    std::vector<Outcome> outcomes(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            try {
                GpProblem g;
                try {
                    g = expand(cg, decode(i, valid));
                } catch (const RejectedExpansion&) {
                    outcomes[i].rejected = true;
                    continue;
                }
                const SolveReport r = solve(standardize(g), cfg.solver);
                outcomes[i].status = r.status;
                outcomes[i].z = r.objective_value;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = total;
            }
        }
    };
    unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(total, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    ChoiceReport rep;
    rep.combinations = total;
    std::optional<std::size_t> winner;
    double zmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < total; ++i) {
        const auto& o = outcomes[i];
        if (o.rejected) {
            ++rep.rejected;
        } else if (o.status == SolveStatus::Optimal) {
            ++rep.optimal;
            zmin = std::min(zmin, o.z);
        }
    }
    if (rep.optimal > 0) {
        // Everything within the tie band of the minimum competes on bit string only,
        // so the result does not depend on evaluation order.
        const double band = 1e-9 * std::abs(zmin);
        std::string best_bits;
        for (std::size_t i = 0; i < total; ++i) {
            const auto& o = outcomes[i];
            if (o.rejected || o.status != SolveStatus::Optimal || o.z > zmin + band) continue;
            const std::string bits = bit_string(decode(i, valid));
            if (!winner || bits < best_bits) {
                winner = i;
                best_bits = bits;
            }
        }
        rep.status = SolveStatus::Optimal;
    } else {
        // No optimum: keep a shared failure class (so a fixed model reports exactly
        // what solve would); mixed or all-rejected outcomes count as infeasible.
        std::optional<SolveStatus> shared;
        bool mixed = false;
        for (std::size_t i = 0; i < total; ++i) {
            if (outcomes[i].rejected) continue;
            if (!shared) {
                shared = outcomes[i].status;
                winner = i;
            } else if (*shared != outcomes[i].status) {
                mixed = true;
            }
        }
        rep.status = shared && !mixed ? *shared : SolveStatus::Infeasible;
        if (mixed) winner.reset();
        std::ostringstream msg;
        msg << "no expansion reached optimal (" << total << " combinations, " << rep.rejected << " rejected)";
        rep.message = msg.str();
    }

    if (winner) {
        rep.chosen = decode(*winner, valid);
        for (std::size_t s = 0; s < cg.sets.size(); ++s) rep.chosen_values.push_back(selector_polynomial(cg.sets[s], rep.chosen[s]));
        rep.chosen_problem = expand(cg, rep.chosen);
        rep.best = solve(standardize(rep.chosen_problem), cfg.solver);
        if (rep.message.empty()) rep.message = rep.best.message;
    }

    if (cfg.keep_assignments) {
        rep.assignments.reserve(total);
        for (std::size_t i = 0; i < total; ++i) {
            AssignmentOutcome a;
            a.choice = decode(i, valid);
            for (std::size_t s = 0; s < cg.sets.size(); ++s) a.values.push_back(selector_polynomial(cg.sets[s], a.choice[s]));
            a.rejected = outcomes[i].rejected;
            a.status = outcomes[i].status;
            a.objective_value = outcomes[i].z;
            rep.assignments.push_back(std::move(a));
        }
    }
    return rep;
}

}  // namespace gpsel
