#include "gaifman/turing.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gaifman {

namespace {

constexpr const char* kBlank = "_";

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void TuringMachine::validate() const {
    if (states.empty()) throw std::invalid_argument("machine has no states");
    auto known = [&](const std::string& q) {
        return std::find(states.begin(), states.end(), q) != states.end();
    };
    if (!known(accept_state) || !known(reject_state))
        throw std::invalid_argument("accept/reject state not among states");
    if (accept_state == reject_state)
        throw std::invalid_argument("accept and reject states must differ");
    for (const auto& [key, tr] : delta) {
        if (!known(key.first) || !known(tr.next_state))
            throw std::invalid_argument("transition uses unknown state");
        if (key.first == accept_state || key.first == reject_state)
            throw std::invalid_argument("halting states cannot have outgoing transitions");
    }
    for (const auto& a : alphabet)
        if (a == kBlank || a == "$")
            throw std::invalid_argument("alphabet must not contain reserved letters");
}

TuringMachine TuringMachine::parse(const std::string& text) {
    TuringMachine m;
    std::istringstream in(text);
    std::string line;
    std::set<std::string> letters;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("machine line " + std::to_string(line_no) + ": expected 'key: value'");
        std::string key = strip(line.substr(0, colon));
        std::string value = strip(line.substr(colon + 1));
        if (key == "states") {
            std::stringstream ss(value);
            std::string q;
            while (ss >> q) m.states.push_back(q);
        } else if (key == "accept") {
            m.accept_state = value;
        } else if (key == "reject") {
            m.reject_state = value;
        } else if (key == "alphabet") {
            std::stringstream ss(value);
            std::string a;
            while (ss >> a) letters.insert(a);
        } else if (key == "delta") {
            // (q,a) -> (q2,b,L|R)
            auto arrow = value.find("->");
            if (arrow == std::string::npos)
                throw std::runtime_error("machine line " + std::to_string(line_no) + ": missing ->");
            auto parse_triple = [&](const std::string& part) {
                std::string t = strip(part);
                if (t.size() < 2 || t.front() != '(' || t.back() != ')')
                    throw std::runtime_error("machine line " + std::to_string(line_no) +
                                             ": expected parenthesized tuple");
                std::vector<std::string> items;
                std::stringstream ss(t.substr(1, t.size() - 2));
                std::string item;
                while (std::getline(ss, item, ',')) items.push_back(strip(item));
                return items;
            };
            auto lhs = parse_triple(value.substr(0, arrow));
            auto rhs = parse_triple(value.substr(arrow + 2));
            if (lhs.size() != 2 || rhs.size() != 3)
                throw std::runtime_error("machine line " + std::to_string(line_no) +
                                         ": delta needs (q,a) -> (q2,b,L|R)");
            if (rhs[2] != "L" && rhs[2] != "R")
                throw std::runtime_error("machine line " + std::to_string(line_no) + ": move must be L or R");
            m.delta[{lhs[0], lhs[1]}] = {rhs[0], rhs[1], rhs[2] == "L" ? Move::Left : Move::Right};
            if (lhs[1] != kBlank) letters.insert(lhs[1]);
            if (rhs[1] != kBlank) letters.insert(rhs[1]);
        } else {
            throw std::runtime_error("machine line " + std::to_string(line_no) + ": unknown key " + key);
        }
    }
    m.alphabet.assign(letters.begin(), letters.end());
    m.validate();
    return m;
}

std::string TuringMachine::to_text() const {
    std::string out = "states:";
    for (const auto& q : states) out += " " + q;
    out += "\naccept: " + accept_state + "\nreject: " + reject_state + "\nalphabet:";
    for (const auto& a : alphabet) out += " " + a;
    out += "\n";
    for (const auto& [key, tr] : delta)
        out += "delta: (" + key.first + "," + key.second + ") -> (" + tr.next_state + "," +
               tr.write + "," + (tr.move == Move::Left ? "L" : "R") + ")\n";
    return out;
}

Signature tm_signature(const TuringMachine& m) {
    std::vector<RelationInfo> rels{{"leq", 2}, {"S", 2}, {"E", 2}, {"P_mark", 1}, {"P_blank", 1}};
    for (const auto& a : m.alphabet) rels.push_back({"P_" + a, 1});
    for (const auto& q : m.states) rels.push_back({"q_" + q, 1});
    return Signature(std::move(rels));
}

namespace {

struct Config {
    std::vector<std::string> tape;  // cells 1..len, letters or blank
    int head = 1;                   // 1-based cell
    std::string state;
};

bool is_final(const TuringMachine& m, const Config& c) {
    return c.state == m.accept_state || c.state == m.reject_state;
}

Config step(const TuringMachine& m, Config c) {
    const std::string& letter = c.tape[static_cast<std::size_t>(c.head - 1)];
    auto it = m.delta.find({c.state, letter});
    if (it == m.delta.end())
        throw std::runtime_error("machine is stuck: no transition from (" + c.state + "," + letter + ")");
    c.tape[static_cast<std::size_t>(c.head - 1)] = it->second.write;
    c.state = it->second.next_state;
    if (it->second.move == Move::Left) {
        if (c.head == 1) throw std::runtime_error("machine moved onto the tape marker");
        --c.head;
    } else {
        ++c.head;
    }
    c.tape.push_back(kBlank);  // one fresh blank per step keeps sizes stepping by one
    return c;
}

}  // namespace

EncodedRun encode_run(const TuringMachine& m, const std::string& word, int max_steps) {
    m.validate();
    for (char ch : word) {
        std::string letter(1, ch);
        if (std::find(m.alphabet.begin(), m.alphabet.end(), letter) == m.alphabet.end())
            throw std::invalid_argument("word letter not in alphabet: " + letter);
    }

    std::vector<Config> run;
    Config c;
    for (char ch : word) c.tape.push_back(std::string(1, ch));
    c.tape.push_back(kBlank);  // head room
    c.head = 1;
    c.state = m.start_state();
    run.push_back(c);
    while (!is_final(m, run.back()) && static_cast<int>(run.size()) <= max_steps)
        run.push_back(step(m, run.back()));

    EncodedRun out;
    out.halted = is_final(m, run.back());
    out.accepted = run.back().state == m.accept_state;
    out.steps = static_cast<int>(run.size()) - 1;

    Signature sig = tm_signature(m);
    int total = 0;
    for (const auto& cfg : run) total += 1 + static_cast<int>(cfg.tape.size());
    Structure s(sig, total);

    int next_id = 0;
    for (std::size_t t = 0; t < run.size(); ++t) {
        const Config& cfg = run[t];
        std::vector<int> chain;
        int size = 1 + static_cast<int>(cfg.tape.size());
        for (int i = 0; i < size; ++i) chain.push_back(next_id++);
        // leq total order + in-chain successors.
        for (std::size_t i = 0; i < chain.size(); ++i)
            for (std::size_t j = i; j < chain.size(); ++j) s.add("leq", {chain[i], chain[j]});
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) s.add("S", {chain[i], chain[i + 1]});
        // Marker and cells.
        s.add("P_mark", {chain[0]});
        for (std::size_t cell = 1; cell < chain.size(); ++cell) {
            const std::string& letter = cfg.tape[cell - 1];
            s.add(letter == kBlank ? "P_blank" : "P_" + letter, {chain[cell]});
        }
        s.add("q_" + cfg.state, {chain[static_cast<std::size_t>(cfg.head)]});
        out.chains.push_back(std::move(chain));
    }
    // Cross-chain S link and E edges (positions are 1-based chain indices).
    for (std::size_t t = 0; t + 1 < out.chains.size(); ++t) {
        const auto& cur = out.chains[t];
        const auto& nxt = out.chains[t + 1];
        s.add("S", {cur.back(), nxt.front()});
        for (std::size_t a = 0; a < cur.size(); ++a)
            for (std::size_t b = 0; b <= a && b < nxt.size(); ++b) s.add("E", {cur[a], nxt[b]});
    }
    out.structure = std::move(s);
    return out;
}

namespace {

Formula rel2(const char* name, const std::string& a, const std::string& b) {
    return f_atom(-1, name, {a, b});
}
Formula unary(const std::string& name, const std::string& x) { return f_atom(-1, name, {x}); }
Formula leq(const std::string& a, const std::string& b) { return rel2("leq", a, b); }
Formula succ(const std::string& a, const std::string& b) { return rel2("S", a, b); }

Formula in_chain(const std::string& u, const std::string& x) {
    return f_or({leq(u, x), leq(x, u)});
}

Formula head_at(const TuringMachine& m, const std::string& z) {
    std::vector<Formula> any;
    for (const auto& q : m.states) any.push_back(unary("q_" + q, z));
    return f_or(std::move(any));
}

std::vector<std::string> cell_letters(const TuringMachine& m) {
    std::vector<std::string> out{kBlank};
    for (const auto& a : m.alphabet) out.push_back(a);
    return out;
}

Formula letter_pred(const std::string& letter, const std::string& z) {
    return unary(letter == kBlank ? "P_blank" : "P_" + letter, z);
}

Formula exactly_one_letter(const TuringMachine& m, const std::string& z) {
    auto letters = cell_letters(m);
    std::vector<Formula> options;
    for (const auto& l : letters) {
        std::vector<Formula> conj{letter_pred(l, z)};
        for (const auto& l2 : letters)
            if (l2 != l) conj.push_back(f_not(letter_pred(l2, z)));
        options.push_back(f_and(std::move(conj)));
    }
    return f_or(std::move(options));
}

Formula no_letter(const TuringMachine& m, const std::string& z) {
    std::vector<Formula> conj;
    for (const auto& l : cell_letters(m)) conj.push_back(f_not(letter_pred(l, z)));
    return f_and(std::move(conj));
}

Formula states_exclusive(const TuringMachine& m, const std::string& z) {
    std::vector<Formula> conj;
    for (std::size_t i = 0; i < m.states.size(); ++i)
        for (std::size_t j = i + 1; j < m.states.size(); ++j)
            conj.push_back(f_not(f_and({unary("q_" + m.states[i], z), unary("q_" + m.states[j], z)})));
    return f_and(std::move(conj));
}

// f-alignment: z2 is the leq-greatest E-image of z1.
Formula phi_f(const std::string& z1, const std::string& z2, const std::string& aux) {
    return f_and({rel2("E", z1, z2),
                  f_forall(aux, f_implies(f_and({leq(z2, aux), f_not(f_equal(z2, aux))}),
                                          f_not(rel2("E", z1, aux))))});
}

Formula valid_config(const TuringMachine& m, const std::string& x) {
    // Unique marker at the chain minimum, carrying no letter or state.
    Formula marker = f_exists("m", f_and({
        in_chain("m", x), unary("P_mark", "m"),
        f_forall("u", f_implies(in_chain("u", x),
            f_and({f_implies(unary("P_mark", "u"), f_equal("u", "m")), leq("m", "u")}))),
        no_letter(m, "m"), f_not(head_at(m, "m")),
    }));
    // Every non-marker chain element carries exactly one letter.
    Formula cells = f_forall("u", f_implies(f_and({in_chain("u", x), f_not(unary("P_mark", "u"))}),
                                            exactly_one_letter(m, "u")));
    // Exactly one state-marked element.
    Formula one_head = f_exists("h", f_and({
        in_chain("h", x), head_at(m, "h"),
        f_forall("u", f_implies(f_and({in_chain("u", x), head_at(m, "u")}), f_equal("u", "h"))),
    }));
    Formula excl = f_forall("u", f_implies(in_chain("u", x), states_exclusive(m, "u")));
    return f_and({marker, cells, one_head, excl});
}

Formula no_cross_successor(const std::string& x) {
    return f_forall("u", f_implies(in_chain("u", x),
        f_forall("z", f_not(f_and({succ("u", "z"), f_not(leq("u", "z"))})))));
}

}  // namespace

ThetaFormulas theta_formulas(const TuringMachine& m, const std::string& word) {
    ThetaFormulas out;
    out.theta_c = valid_config(m, "x");
    out.theta_n = no_cross_successor("x");

    // theta_T(x,y).
    {
        std::vector<Formula> parts;
        parts.push_back(succ("x", "y"));
        parts.push_back(f_not(leq("x", "y")));
        parts.push_back(valid_config(m, "x"));
        parts.push_back(valid_config(m, "y"));
        // Non-head cells keep their letters across the f-alignment.
        std::vector<Formula> copy_eq;
        for (const auto& l : cell_letters(m)) {
            copy_eq.push_back(f_implies(letter_pred(l, "z"), letter_pred(l, "z2")));
            copy_eq.push_back(f_implies(letter_pred(l, "z2"), letter_pred(l, "z")));
        }
        parts.push_back(f_forall("z", f_implies(
            f_and({in_chain("z", "x"), f_not(unary("P_mark", "z")), f_not(head_at(m, "z"))}),
            f_exists("z2", f_and({in_chain("z2", "y"), phi_f("z", "z2", "u"), f_and(copy_eq)})))));
        // The freshly added cell of the next configuration is blank.
        parts.push_back(f_forall("z2", f_implies(
            f_and({in_chain("z2", "y"), f_not(unary("P_mark", "z2")),
                   f_not(f_exists("z", f_and({in_chain("z", "x"), phi_f("z", "z2", "u")})))}),
            letter_pred(kBlank, "z2"))));
        // Some transition of the machine explains the head.
        std::vector<Formula> trans;
        for (const auto& [key, tr] : m.delta) {
            const auto& [state, letter] = key;
            Formula move_part =
                tr.move == Move::Right
                    ? f_exists("g", f_and({succ("h2", "g"), leq("h2", "g"),
                                           unary("q_" + tr.next_state, "g")}))
                    : f_exists("g", f_and({succ("g", "h2"), leq("g", "h2"),
                                           f_not(unary("P_mark", "g")),
                                           unary("q_" + tr.next_state, "g")}));
            trans.push_back(f_exists("h", f_and({
                in_chain("h", "x"), unary("q_" + state, "h"), letter_pred(letter, "h"),
                f_exists("h2", f_and({in_chain("h2", "y"), phi_f("h", "h2", "u"),
                                      letter_pred(tr.write, "h2"), move_part})),
            })));
        }
        parts.push_back(f_or(std::move(trans)));
        out.theta_t = f_and(std::move(parts));
    }

    // theta_I^w(x): x is the marker of the initial configuration on `word`
    // and the component has no S-predecessor.
    {
        std::vector<Formula> parts;
        parts.push_back(unary("P_mark", "x"));
        parts.push_back(f_forall("u", f_implies(in_chain("u", "x"), leq("x", "u"))));
        parts.push_back(f_forall("z", f_not(succ("z", "x"))));
        parts.push_back(valid_config(m, "x"));
        // Walk the chain: cells carry word letters then one blank; head on cell 1.
        std::vector<std::string> letters;
        for (char ch : word) letters.push_back(std::string(1, ch));
        letters.push_back(kBlank);
        Formula walk = f_true();
        for (int i = static_cast<int>(letters.size()) - 1; i >= 0; --i) {
            std::string cur = "c" + std::to_string(i + 1);
            std::string prev = i == 0 ? std::string("x") : "c" + std::to_string(i);
            std::vector<Formula> conj{succ(prev, cur), leq(prev, cur),
                                      letter_pred(letters[static_cast<std::size_t>(i)], cur)};
            if (i == 0)
                conj.push_back(unary("q_" + m.start_state(), cur));
            else
                conj.push_back(f_not(head_at(m, cur)));
            if (i == static_cast<int>(letters.size()) - 1)
                conj.push_back(f_forall("u", f_not(f_and({succ(cur, "u"), leq(cur, "u")}))));
            conj.push_back(walk);
            walk = f_exists(cur, f_and(std::move(conj)));
        }
        parts.push_back(walk);
        out.theta_i = f_and(std::move(parts));
    }

    // theta_F(x): halted configuration with no S-successor.
    {
        std::vector<Formula> final_states;
        for (const auto& q : {m.accept_state, m.reject_state})
            final_states.push_back(f_exists("h", f_and({in_chain("h", "x"), unary("q_" + q, "h")})));
        out.theta_f = f_and({valid_config(m, "x"), f_or(std::move(final_states)),
                             no_cross_successor("x")});
    }
    return out;
}

Formula phi_m(const TuringMachine& m, const std::string& word, PhiMVariant variant) {
    ThetaFormulas th = theta_formulas(m, word);
    Formula init = f_exists("x", th.theta_i);
    Formula steps = f_forall("x", f_forall("y", f_implies(
        f_and({succ("x", "y"), f_not(leq("x", "y"))}),
        th.theta_t)));
    if (variant == PhiMVariant::RunExists) return f_and({init, steps});
    return f_and({init, steps, f_exists("x", th.theta_f)});
}

}  // namespace gaifman
