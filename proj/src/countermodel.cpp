#include "ttstar/countermodel.hpp"

#include <map>
#include <string>
#include <utility>

#include "ttstar/error.hpp"

namespace ttstar {

namespace {

using EntryKey = std::pair<std::string, ArgumentPath>;

// Entrywise interpretation over a growing set of decisions. A decided
// function-typed entry is the lazy value standing for its own table.
class PartialInterpretation : public Interpretation {
 public:
  explicit PartialInterpretation(const Signature& sig) {
    for (const auto& [name, type] : sig.constants()) types_.emplace(name, type);
  }

  std::optional<Value> constant_value(const std::string&) const override { return std::nullopt; }

  std::optional<Value> apply_constant(const std::string& name, const ArgumentPath& path) const override {
    const Type& t = type_of(name);
    if (path.empty() && t.is_function()) return Value::lazy(name, {}, t);
    auto it = decided_.find(EntryKey{name, path});
    if (it == decided_.end()) throw NeedEntry{name, path};
    return it->second;
  }

  const Type& type_of(const std::string& name) const {
    auto it = types_.find(name);
    if (it == types_.end()) fail(ErrorKind::Reference, "undeclared constant '" + name + "'");
    return it->second;
  }

  Type target_type(const std::string& name, const ArgumentPath& path) const {
    Type t = type_of(name);
    for (std::size_t i = 0; i < path.size(); ++i) t = t.result();
    return t;
  }

  std::map<EntryKey, std::optional<Value>>& decided() { return decided_; }
  const std::map<EntryKey, std::optional<Value>>& decided() const { return decided_; }

 private:
  std::map<std::string, Type> types_;
  std::map<EntryKey, std::optional<Value>> decided_;
};

std::vector<Tuple> tuples(const std::vector<Type>& params, const Evaluator& ev) {
  std::vector<Tuple> out{Tuple{}};
  for (const auto& p : params) {
    std::vector<Tuple> next;
    for (const auto& prefix : out)
      for (const auto& v : ev.domain(p)) {
        Tuple t = prefix;
        t.push_back(v);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

// Undecided entries are left undefined; undecided base constants take the
// first element.
Value complete(const PartialInterpretation& interp, const Evaluator& ev, const std::string& name, const Type& t,
               const ArgumentPath& path) {
  if (!t.is_function()) {
    auto it = interp.decided().find(EntryKey{name, path});
    if (it != interp.decided().end() && it->second) return *it->second;
    if (t.is_construction()) return Value::quoted(mk::T());
    return Value::element(t.base_type(), 0);
  }
  FunctionTable table;
  std::vector<Tuple> keys;
  try {
    keys = tuples(t.params(), ev);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedOrder) throw;
    return Value::function({});
  }
  for (auto& key : keys) {
    ArgumentPath p = path;
    p.push_back(key);
    auto it = interp.decided().find(EntryKey{name, p});
    if (it == interp.decided().end() || !it->second) continue;
    table.emplace(std::move(key), it->second->is_lazy() ? complete(interp, ev, name, t.result(), p) : *it->second);
  }
  return Value::function(std::move(table));
}

class FrameSearch {
 public:
  FrameSearch(const Sequent& s, const Theory& theory, Frame frame, std::size_t cap)
      : sequent_(s), theory_(theory), frame_(std::move(frame)), interp_(theory.signature),
        ev_(frame_, interp_, cap), cap_(cap) {}

  bool run() { return search(); }
  std::size_t nodes() const { return nodes_; }

  Model model() const {
    Model m(theory_.signature, frame_);
    for (const auto& [name, type] : theory_.signature.constants()) m.interpret(name, complete(interp_, ev_, name, type, {}));
    m.validate();
    return m;
  }
  const Assignment& witness() const { return witness_; }

 private:
  std::vector<std::optional<Value>> options(const NeedEntry& need) const {
    Type t = interp_.target_type(need.constant, need.path);
    std::vector<std::optional<Value>> out;
    if (!need.path.empty()) out.emplace_back(std::nullopt);
    if (t.is_function()) {
      out.emplace_back(Value::lazy(need.constant, need.path, t));
    } else {
      for (const auto& v : ev_.domain(t)) out.emplace_back(v);
    }
    return out;
  }

  bool search() {
    if (++nodes_ > cap_)
      fail(ErrorKind::SizeCap, "countermodel search exceeded " + std::to_string(cap_) + " nodes");
    NeedEntry need;
    try {
      Validity r = sequent_valid(sequent_, ev_);
      if (r.valid) return false;
      witness_ = *r.witness;
      return true;
    } catch (const NeedEntry& n) {
      need = n;
    }
    EntryKey key{need.constant, need.path};
    for (auto& opt : options(need)) {
      interp_.decided().insert_or_assign(key, std::move(opt));
      if (search()) return true;
    }
    interp_.decided().erase(key);
    return false;
  }

  const Sequent& sequent_;
  const Theory& theory_;
  Frame frame_;
  PartialInterpretation interp_;
  Evaluator ev_;
  std::size_t cap_;
  std::size_t nodes_ = 0;
  Assignment witness_;
};

}  // namespace

Frame make_frame(int individuals, int worlds) {
  Frame f;
  for (int k = 0; k < individuals; ++k) {
    std::string name;
    for (int n = k;; n = n / 26 - 1) {
      name.insert(name.begin(), static_cast<char>('a' + n % 26));
      if (n < 26) break;
    }
    f.individuals.push_back(name);
  }
  for (int k = 1; k <= worlds; ++k) f.worlds.push_back("w" + std::to_string(k));
  return f;
}

CountermodelResult find_countermodel(const Sequent& s, const Theory& theory, const SearchBounds& bounds) {
  if (bounds.max_i < 1 || bounds.max_w < 1) fail(ErrorKind::Model, "domain bounds must be at least 1");
  std::vector<std::pair<int, int>> sizes;
  for (int total = 2; total <= bounds.max_i + bounds.max_w; ++total)
    for (int ni = 1; ni <= bounds.max_i; ++ni) {
      int nw = total - ni;
      if (nw >= 1 && nw <= bounds.max_w) sizes.emplace_back(ni, nw);
    }

  CountermodelResult out;
  for (auto [ni, nw] : sizes) {
    out.frames_tried.emplace_back(ni, nw);
    FrameSearch search(s, theory, make_frame(ni, nw), bounds.cap);
    bool found = search.run();
    out.nodes += search.nodes();
    if (!found) continue;
    Model m = search.model();
    // The completed model agrees with every consulted entry; check anyway.
    Evaluator ev(m.frame(), m, bounds.cap);
    const Assignment& v = search.witness();
    for (const auto& mt : s.antecedent)
      if (!ev.satisfies(mt, v)) fail(ErrorKind::Model, "completed countermodel lost an antecedent");
    if (ev.satisfies(s.succedent, v)) fail(ErrorKind::Model, "completed countermodel satisfies the succedent");
    out.found = true;
    out.model = std::move(m);
    out.assignment = v;
    return out;
  }
  return out;
}

}  // namespace ttstar
