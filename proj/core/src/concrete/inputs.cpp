#include "specsynth/concrete/inputs.hpp"

#include <functional>
#include <sstream>

namespace specsynth {

std::string Shape::str() const {
  switch (kind) {
  case Kind::Null: return "NULL";
  case Kind::Int: return std::to_string(value);
  case Kind::Object: break;
  }
  std::ostringstream out;
  out << tag << "{";
  bool first = true;
  for (const auto &[f, s] : fields) {
    out << (first ? "" : ", ") << f << "=" << s->str();
    first = false;
  }
  out << "}";
  return out.str();
}

int Shape::size() const {
  if (kind != Kind::Object)
    return 0;
  int n = 1;
  for (const auto &[f, s] : fields)
    n += s->size();
  return n;
}

namespace {

CValue build(const Program &program, const Shape &s, ConcreteState &st) {
  switch (s.kind) {
  case Shape::Kind::Null: return CValue::null();
  case Shape::Kind::Int: return CValue::integer(s.value);
  case Shape::Kind::Object: break;
  }
  Int id = st.allocate(program.structDef(s.tag));
  for (const auto &[f, sub] : s.fields) {
    CValue v = build(program, *sub, st);
    st.heap.at(id).fields[f] = v;
  }
  return CValue::ref(id);
}

bool isNode(const StructDef &sd) { return !sd.selfFields().empty(); }

std::vector<Shape> cartesian(const std::string &tag, const std::vector<std::string> &names,
                             const std::vector<std::vector<Shape>> &alts) {
  std::vector<Shape> out;
  std::vector<std::size_t> idx(alts.size(), 0);
  for (const auto &a : alts)
    if (a.empty())
      return out;
  for (;;) {
    Shape o;
    o.kind = Shape::Kind::Object;
    o.tag = tag;
    for (std::size_t i = 0; i < alts.size(); ++i)
      o.fields.emplace_back(names[i], std::make_shared<Shape>(alts[i][idx[i]]));
    out.push_back(std::move(o));
    std::size_t k = alts.size();
    while (k > 0) {
      --k;
      if (++idx[k] < alts[k].size())
        break;
      idx[k] = 0;
      if (k == 0)
        return out;
    }
    if (alts.empty())
      return out;
  }
}

std::vector<Shape> intRange(Int lo, Int hi) {
  std::vector<Shape> out;
  for (Int v = lo; v <= hi; ++v)
    out.push_back(Shape::integer(v));
  return out;
}

std::vector<Shape> pointerShapes(const Program &p, const std::string &tag, int budget, int depth,
                                 const InputBounds &b) {
  std::vector<Shape> out{Shape::null()};
  const StructDef &sd = p.structDef(tag);
  bool node = isNode(sd);
  if (node ? budget <= 0 : depth >= b.maxDepth)
    return out;
  std::vector<std::string> names;
  std::vector<std::vector<Shape>> alts;
  for (const auto &[f, t] : sd.fields) {
    names.push_back(f);
    if (t.isInt())
      alts.push_back(node ? intRange(b.valueLo, b.valueHi) : intRange(b.scalarLo, b.scalarHi));
    else if (t.tag == tag)
      alts.push_back(pointerShapes(p, tag, budget - 1, depth, b));
    else
      alts.push_back(pointerShapes(p, t.tag, b.maxLen, depth + 1, b));
  }
  for (auto &o : cartesian(tag, names, alts))
    out.push_back(std::move(o));
  return out;
}

Int uniform(std::mt19937_64 &rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

Shape randomPointer(const Program &p, const std::string &tag, int depth, bool root, const InputBounds &b,
                    std::mt19937_64 &rng);

Shape randomChain(const Program &p, const std::string &tag, int len, int depth, const InputBounds &b,
                  std::mt19937_64 &rng) {
  if (len <= 0)
    return Shape::null();
  const StructDef &sd = p.structDef(tag);
  Shape o;
  o.kind = Shape::Kind::Object;
  o.tag = tag;
  bool chained = false;
  for (const auto &[f, t] : sd.fields) {
    Shape v;
    if (t.isInt()) {
      v = Shape::integer(uniform(rng, b.valueLo, b.valueHi));
    } else if (t.tag == tag) {
      v = chained ? Shape::null() : randomChain(p, tag, len - 1, depth, b, rng);
      chained = true;
    } else {
      v = randomPointer(p, t.tag, depth + 1, false, b, rng);
    }
    o.fields.emplace_back(f, std::make_shared<Shape>(std::move(v)));
  }
  return o;
}

Shape randomPointer(const Program &p, const std::string &tag, int depth, bool root, const InputBounds &b,
                    std::mt19937_64 &rng) {
  const StructDef &sd = p.structDef(tag);
  if (isNode(sd))
    return randomChain(p, tag, static_cast<int>(uniform(rng, 0, b.maxLen)), depth, b, rng);
  if (depth >= b.maxDepth || uniform(rng, 0, root ? 9 : 3) == 0)
    return Shape::null();
  Shape o;
  o.kind = Shape::Kind::Object;
  o.tag = tag;
  for (const auto &[f, t] : sd.fields) {
    Shape v = t.isInt() ? Shape::integer(uniform(rng, b.scalarLo, b.scalarHi))
                        : randomPointer(p, t.tag, depth + 1, false, b, rng);
    o.fields.emplace_back(f, std::make_shared<Shape>(std::move(v)));
  }
  return o;
}

void nodeValues(const Program &p, const Shape &s, std::vector<Int> &out) {
  if (s.kind != Shape::Kind::Object)
    return;
  bool node = isNode(p.structDef(s.tag));
  for (const auto &[f, sub] : s.fields) {
    if (sub->kind == Shape::Kind::Int && node)
      out.push_back(sub->value);
    nodeValues(p, *sub, out);
  }
}

Shape deepCopy(const Shape &s) {
  Shape c = s;
  for (auto &[f, sub] : c.fields)
    sub = std::make_shared<Shape>(deepCopy(*sub));
  return c;
}

/// Pre-order walk handing out mutable references to every shape.
void walk(Shape &s, const std::function<void(Shape &)> &fn) {
  fn(s);
  for (auto &[f, sub] : s.fields)
    walk(*sub, fn);
}

} // namespace

std::pair<ConcreteState, std::vector<CValue>> ConcreteInput::materialize(const Program &program) const {
  ConcreteState st;
  std::vector<CValue> vals;
  for (const auto &a : args)
    vals.push_back(build(program, a, st));
  return {std::move(st), std::move(vals)};
}

std::string ConcreteInput::str(const FunctionDef &fn) const {
  std::ostringstream out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i)
      out << ", ";
    out << (i < fn.params.size() ? fn.params[i].name : "?") << " = " << args[i].str();
  }
  return out.str();
}

std::vector<ConcreteInput> enumerateInputs(const Program &program, const std::string &function,
                                           const InputBounds &b) {
  const FunctionDef &fn = program.function(function);
  std::vector<std::vector<Shape>> alts;
  for (const auto &prm : fn.params)
    alts.push_back(prm.type.isInt() ? intRange(b.valueLo, b.valueHi)
                                    : pointerShapes(program, prm.type.tag, b.maxLen, 0, b));
  std::vector<ConcreteInput> out;
  std::vector<std::size_t> idx(alts.size(), 0);
  for (const auto &a : alts)
    if (a.empty())
      return out;
  for (;;) {
    ConcreteInput in;
    for (std::size_t i = 0; i < alts.size(); ++i)
      in.args.push_back(alts[i][idx[i]]);
    out.push_back(std::move(in));
    std::size_t k = alts.size();
    bool done = true;
    while (k > 0) {
      --k;
      if (++idx[k] < alts[k].size()) {
        done = false;
        break;
      }
      idx[k] = 0;
    }
    if (done)
      return out;
  }
}

ConcreteInput randomInput(const Program &program, const std::string &function, const InputBounds &b,
                          std::mt19937_64 &rng) {
  const FunctionDef &fn = program.function(function);
  ConcreteInput in;
  std::vector<Int> stored;
  for (const auto &prm : fn.params) {
    if (prm.type.isPtr()) {
      in.args.push_back(randomPointer(program, prm.type.tag, 0, true, b, rng));
      nodeValues(program, in.args.back(), stored);
    } else {
      in.args.push_back(Shape::integer(0)); // filled below
    }
  }
  for (std::size_t i = 0; i < fn.params.size(); ++i) {
    if (!fn.params[i].type.isInt())
      continue;
    if (!stored.empty() && uniform(rng, 0, 1) == 0)
      in.args[i] = Shape::integer(stored[static_cast<std::size_t>(uniform(rng, 0, static_cast<Int>(stored.size()) - 1))]);
    else
      in.args[i] = Shape::integer(uniform(rng, b.valueLo, b.valueHi));
  }
  return in;
}

std::vector<ConcreteInput> shrinkCandidates(const ConcreteInput &in) {
  std::vector<ConcreteInput> out;
  // count shapes so each variant mutates exactly one position of a copy
  int total = 0;
  ConcreteInput probe = in;
  for (auto &a : probe.args) {
    a = deepCopy(a);
    walk(a, [&](Shape &) { ++total; });
  }
  auto mutateAt = [&](int pos, const std::function<bool(Shape &)> &m) {
    ConcreteInput c;
    for (const auto &a : in.args)
      c.args.push_back(deepCopy(a));
    int k = 0;
    bool changed = false;
    for (auto &a : c.args)
      walk(a, [&](Shape &s) {
        if (k++ == pos && !changed)
          changed = m(s);
      });
    if (changed)
      out.push_back(std::move(c));
  };
  // drop a list node: a self field replaced by the node after it
  for (int pos = 0; pos < total; ++pos)
    mutateAt(pos, [](Shape &s) {
      if (s.kind != Shape::Kind::Object)
        return false;
      for (auto &[f, sub] : s.fields) {
        if (sub->kind == Shape::Kind::Object && sub->tag == s.tag) {
          for (auto &[g, next] : sub->fields)
            if (g == f) {
              sub = next;
              return true;
            }
        }
      }
      return false;
    });
  for (int pos = 0; pos < total; ++pos) {
    mutateAt(pos, [](Shape &s) {
      if (s.kind != Shape::Kind::Int || s.value == 0)
        return false;
      s.value = 0;
      return true;
    });
    mutateAt(pos, [](Shape &s) {
      if (s.kind != Shape::Kind::Int || (s.value > -2 && s.value < 2))
        return false;
      s.value += s.value > 0 ? -1 : 1;
      return true;
    });
  }
  return out;
}

} // namespace specsynth
