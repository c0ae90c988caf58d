#include "ultras/term.hpp"

#include <algorithm>

#include "ultras/errors.hpp"

namespace ultras {

bool Term::in_sync(std::string_view a) const {
    return std::binary_search(sync_.begin(), sync_.end(), a);
}

namespace {

// Binding strength: choice forms bind loosest, parallel forms sit in the
// middle, prefixes and atoms bind tightest.
int level(TermKind k) {
    switch (k) {
        case TermKind::choice:
        case TermKind::pchoice: return 1;
        case TermKind::par:
        case TermKind::ppar: return 2;
        default: return 3;
    }
}

std::string wrapped(TermPtr t, bool parens) {
    if (parens) return "(" + t->text() + ")";
    return t->text();
}

std::string sync_text(const std::vector<std::string>& sync) {
    std::string out = "|[";
    for (std::size_t i = 0; i < sync.size(); ++i) {
        if (i > 0) out += ",";
        out += sync[i];
    }
    out += "]|";
    return out;
}

// A left operand needs parentheses when it binds looser than the operator;
// a right operand also when it binds equally (operators associate left).
std::string binary_text(TermPtr l, const std::string& op, TermPtr r, int k) {
    return wrapped(l, level(l->kind()) < k) + " " + op + " " + wrapped(r, level(r->kind()) <= k);
}

std::string render(const Term& t) {
    switch (t.kind()) {
        case TermKind::stop: return "stop";
        case TermKind::constant: return t.name();
        case TermKind::prefix:
            return t.action() + "." + wrapped(t.cont(), level(t.cont()->kind()) < 3);
        case TermKind::rated_prefix:
            return "(" + t.action() + "," + to_string(t.rate()) + ")." +
                   wrapped(t.cont(), level(t.cont()->kind()) < 3);
        case TermKind::choice: return binary_text(t.left(), "+", t.right(), 1);
        case TermKind::pchoice:
            return binary_text(t.left(), "+(" + to_string(t.prob()) + ")", t.right(), 1);
        case TermKind::par: return binary_text(t.left(), sync_text(t.sync()), t.right(), 2);
        case TermKind::ppar:
            return binary_text(t.left(), sync_text(t.sync()) + "(" + to_string(t.prob()) + ")",
                               t.right(), 2);
    }
    throw ContractViolation("render: bad TermKind");
}

void normalize_sync(std::vector<std::string>& sync) {
    std::sort(sync.begin(), sync.end());
    sync.erase(std::unique(sync.begin(), sync.end()), sync.end());
}

void check_prob(const Rational& p) {
    if (p < 0 || p > 1) throw ContractViolation("choice probability out of [0,1]: " + to_string(p));
}

}  // namespace

TermPtr TermPool::intern(std::unique_ptr<Term> t) {
    t->text_ = render(*t);
    auto it = index_.find(t->text_);
    if (it != index_.end()) return it->second;
    TermPtr raw = t.get();
    terms_.push_back(std::move(t));
    index_.emplace(raw->text(), raw);
    return raw;
}

TermPtr TermPool::stop() {
    auto t = std::make_unique<Term>(Term());
    t->kind_ = TermKind::stop;
    return intern(std::move(t));
}

TermPtr TermPool::constant(std::string name) {
    if (name.empty()) throw ContractViolation("constant: empty name");
    auto t = std::make_unique<Term>(Term());
    t->kind_ = TermKind::constant;
    t->name_ = std::move(name);
    return intern(std::move(t));
}

TermPtr TermPool::prefix(std::string action, TermPtr cont) {
    if (action.empty() || cont == nullptr) throw ContractViolation("prefix: bad arguments");
    auto t = std::make_unique<Term>(Term());
    t->kind_ = TermKind::prefix;
    t->name_ = std::move(action);
    t->kids_[0] = cont;
    return intern(std::move(t));
}

TermPtr TermPool::rated_prefix(std::string action, Rational rate, TermPtr cont) {
    if (action.empty() || cont == nullptr) throw ContractViolation("rated_prefix: bad arguments");
    if (rate <= 0) throw ContractViolation("rated_prefix: rate must be positive");
    auto t = std::make_unique<Term>(Term());
    t->kind_ = TermKind::rated_prefix;
    t->name_ = std::move(action);
    t->value_ = std::move(rate);
    t->kids_[0] = cont;
    return intern(std::move(t));
}

TermPtr TermPool::choice(TermPtr l, TermPtr r) {
    if (l == nullptr || r == nullptr) throw ContractViolation("choice: bad arguments");
    auto t = std::make_unique<Term>(Term());
    t->kind_ = TermKind::choice;
    t->kids_ = {l, r};
    return intern(std::move(t));
}

TermPtr TermPool::pchoice(Rational p, TermPtr l, TermPtr r) {
    if (l == nullptr || r == nullptr) throw ContractViolation("pchoice: bad arguments");
    check_prob(p);
    auto t = std::make_unique<Term>(Term());
    t->kind_ = TermKind::pchoice;
    t->value_ = std::move(p);
    t->kids_ = {l, r};
    return intern(std::move(t));
}

TermPtr TermPool::par(std::vector<std::string> sync, TermPtr l, TermPtr r) {
    if (l == nullptr || r == nullptr) throw ContractViolation("par: bad arguments");
    normalize_sync(sync);
    auto t = std::make_unique<Term>(Term());
    t->kind_ = TermKind::par;
    t->sync_ = std::move(sync);
    t->kids_ = {l, r};
    return intern(std::move(t));
}

TermPtr TermPool::ppar(std::vector<std::string> sync, Rational p, TermPtr l, TermPtr r) {
    if (l == nullptr || r == nullptr) throw ContractViolation("ppar: bad arguments");
    check_prob(p);
    normalize_sync(sync);
    auto t = std::make_unique<Term>(Term());
    t->kind_ = TermKind::ppar;
    t->value_ = std::move(p);
    t->sync_ = std::move(sync);
    t->kids_ = {l, r};
    return intern(std::move(t));
}

}  // namespace ultras
