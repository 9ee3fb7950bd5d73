#include "exlift/certificate.hpp"

#include <algorithm>

#include "exlift/error.hpp"
#include "exlift/spec_io.hpp"

// The verifier below deliberately re-derives every search with plain ring and
// matrix operations instead of calling the exchange or V-monoid modules.

namespace exlift {

std::vector<Elem> canonical_generators(const Ideal& I) {
  const auto& R = I.ring();
  std::vector<Elem> gens;
  std::vector<bool> covered(R->size(), false);
  covered[R->zero()] = true;
  for (Elem m : I.members()) {
    if (covered[m]) continue;
    gens.push_back(m);
    const Ideal closed = Ideal::closure(R, gens);
    for (Elem x : closed.members()) covered[x] = true;
  }
  return gens;
}

namespace {

// ---------------------------------------------------------------------------
// emission

json el(const FiniteRing& R, Elem a) { return R.describe(a); }

json header(const Ideal& I, const char* kind, json body) {
  const auto& R = *I.ring();
  json gens = json::array();
  for (Elem g : canonical_generators(I)) gens.push_back(R.describe(g));
  return {{"format", "exlift-certificate"}, {"version", kCertificateVersion}, {"kind", kind},
          {"ring", R.descriptor()}, {"ideal", {{"generators", gens}}}, {"body", std::move(body)}};
}

json pass_json(const FiniteRing& R, const RowPass& p) {
  return {{"c", el(R, p.c)},   {"d", el(R, p.d)},   {"x", el(R, p.x)}, {"y", el(R, p.y)}, {"e", el(R, p.e)},
          {"t0", el(R, p.t0)}, {"t2", el(R, p.t2)}, {"r", el(R, p.r)}, {"s", el(R, p.s)}};
}

json row_body(const ReductionResult& r) {
  const auto& R = r.input.R();
  const auto& t = r.trace;
  return {{"input", r.input.to_json()},     {"first", pass_json(R, t.first)}, {"w", el(R, t.w)},
          {"f", el(R, t.f)},                {"t3", el(R, t.t3)},              {"t4", el(R, t.t4)},
          {"w1", el(R, t.w1)},              {"w2", el(R, t.w2)},              {"f1", el(R, t.f1)},
          {"f2", el(R, t.f2)},              {"g", el(R, t.g)},                {"wp", el(R, t.wp)},
          {"second", pass_json(R, t.second)}, {"c_out", el(R, t.c_out)},      {"d_out", el(R, t.d_out)},
          {"h", el(R, t.h)},                {"word", word_to_json(r.word, R)}, {"result", r.result.to_json()}};
}

json col_body(const ReductionResult& c) {
  const auto& R = c.input.R();
  auto op = opposite_ring(c.input.ring());
  ReductionResult row;
  row.side = Side::Right;
  row.input = rebind(transpose(c.input), op);
  row.word = transpose_word(c.word);
  row.idempotent = c.idempotent;
  row.result = rebind(transpose(c.result), op);
  row.trace = c.trace;
  return {{"input", c.input.to_json()}, {"opposite", row_body(row)}, {"k", el(R, c.idempotent)},
          {"word", word_to_json(c.word, R)}, {"result", c.result.to_json()}};
}

json diag_body(const DiagonalizationResult& d) {
  const auto& R = d.alpha.R();
  const auto& g = d.regular;
  json regular = {{"d", el(R, g.d)}, {"p", el(R, g.p)}, {"q", el(R, g.q)},
                  {"w", el(R, g.w)}, {"f", el(R, g.f)}, {"u", el(R, g.u)}};
  return {{"input", d.alpha.to_json()},
          {"row", row_body(d.row)},
          {"alpha_prime", d.alpha_prime.to_json()},
          {"col", col_body(d.col)},
          {"one_minus_p", el(R, d.one_minus_p)},
          {"regular", regular},
          {"t", el(R, d.t)},
          {"v", el(R, d.v)},
          {"zp", el(R, d.zp)},
          {"gamma", word_to_json(d.gamma, R)},
          {"beta", word_to_json(d.beta, R)},
          {"epsilon", word_to_json(d.epsilon, R)},
          {"u", el(R, d.u)},
          {"u_inv", el(R, d.u_inv)},
          {"a_prime", el(R, d.a_prime)},
          {"result", d.result.to_json()}};
}

// ---------------------------------------------------------------------------
// verification

struct Reject {
  std::string contract;
};

[[noreturn]] void reject(const std::string& contract) { throw Reject{contract}; }

void require(bool ok, const std::string& contract) {
  if (!ok) reject(contract);
}

void keys(const json& j, std::initializer_list<const char*> names, const std::string& where) {
  require(j.is_object(), where + ": not an object");
  require(j.size() == names.size(), where + ": unexpected fields");
  for (const char* n : names) require(j.contains(n), where + ": missing " + n);
}

struct Env {
  RingPtr ring;
  Ideal ideal;
};

Elem read_elem(const FiniteRing& R, const json& j, const std::string& name) {
  Elem a = 0;
  try {
    a = R.parse_element(j);
  } catch (const Error&) {
    reject(name + ": unreadable element");
  }
  require(R.describe(a) == j, name + ": non-canonical element");
  return a;
}

RMatrix read_matrix(const RingPtr& R, const json& j, int n, const std::string& name) {
  std::optional<RMatrix> m;
  try {
    m = RMatrix::from_json(R, j);
  } catch (const Error&) {
    reject(name + ": unreadable matrix");
  }
  require(m->n() == n && m->to_json() == j, name + ": malformed matrix");
  return *m;
}

ElemWord read_word(const FiniteRing& R, const json& j, const std::string& name) {
  std::optional<ElemWord> w;
  try {
    w = word_from_json(j, R);
  } catch (const std::exception&) {
    reject(name + ": unreadable word");
  }
  require(word_to_json(*w, R) == j, name + ": non-canonical word");
  return *w;
}

void expect(const FiniteRing& R, const json& obj, const char* key, Elem computed, const std::string& where) {
  require(read_elem(R, obj.at(key), where + "." + key) == computed, where + "." + key);
}

bool in_list(const std::vector<Elem>& sorted, Elem a) { return std::binary_search(sorted.begin(), sorted.end(), a); }

std::optional<std::pair<Elem, Elem>> least_unimodular(const FiniteRing& R, Elem c, Elem d) {
  for (Elem x = 0; x < R.size(); ++x)
    for (Elem y = 0; y < R.size(); ++y)
      if (R.add(R.mul(c, x), R.mul(d, y)) == R.one()) return std::pair{x, y};
  return std::nullopt;
}

// Least (e, r, s): e idempotent in I, e = a r with r in I, 1 - e = (1 - a) s.
std::optional<std::array<Elem, 3>> least_exchange(const Ideal& I, Elem a) {
  const auto& R = *I.ring();
  for (Elem e : I.members()) {
    if (!R.is_idempotent(e)) continue;
    std::optional<Elem> r;
    for (Elem t : I.members())
      if (R.mul(a, t) == e) {
        r = t;
        break;
      }
    if (!r) continue;
    for (Elem s = 0; s < R.size(); ++s)
      if (R.mul(R.sub(R.one(), a), s) == R.sub(R.one(), e)) return std::array<Elem, 3>{e, *r, s};
  }
  return std::nullopt;
}

// a ~ b: x in aRb, y in bRa with xy = a, yx = b.
bool equivalent(const FiniteRing& R, Elem a, Elem b) {
  for (Elem x = 0; x < R.size(); ++x) {
    if (R.mul3(a, x, b) != x) continue;
    for (Elem y = 0; y < R.size(); ++y)
      if (R.mul3(b, y, a) == y && R.mul(x, y) == a && R.mul(y, x) == b) return true;
  }
  return false;
}

// [f] <= [g]: f is equivalent to an idempotent of gRg.
bool class_leq(const FiniteRing& R, Elem f, Elem g) {
  for (Elem h = 0; h < R.size(); ++h)
    if (R.is_idempotent(h) && R.mul(g, h) == h && R.mul(h, g) == h && equivalent(R, f, h)) return true;
  return false;
}

Elem least_join(const Env& env, Elem f1, Elem f2, const std::string& where) {
  const auto& R = *env.ring;
  const auto a = right_multiples(R, f1), b = right_multiples(R, f2);
  std::vector<bool> span(R.size(), false);
  for (Elem x : a)
    for (Elem y : b) span[R.add(x, y)] = true;
  const Elem pair[] = {f1, f2};
  const auto target = Ideal::closure(env.ring, pair).members();
  for (Elem g = 0; g < R.size(); ++g)
    if (span[g] && R.is_idempotent(g) && principal_ideal(env.ring, g).members() == target && class_leq(R, f1, g) &&
        class_leq(R, f2, g))
      return g;
  reject(where + ": no joining idempotent");
}

struct PassOut {
  Elem e, r, s;
};

PassOut check_pass(const Env& env, const json& j, Elem c, Elem d, const std::string& where) {
  const auto& R = *env.ring;
  keys(j, {"c", "d", "x", "y", "e", "t0", "t2", "r", "s"}, where);
  expect(R, j, "c", c, where);
  expect(R, j, "d", d, where);
  auto xy = least_unimodular(R, c, d);
  require(xy.has_value(), where + ": row is not unimodular");
  expect(R, j, "x", xy->first, where);
  expect(R, j, "y", xy->second, where);
  auto w = least_exchange(env.ideal, R.mul(c, xy->first));
  require(w.has_value(), where + ": no exchange witness");
  expect(R, j, "e", (*w)[0], where);
  expect(R, j, "t0", (*w)[1], where);
  expect(R, j, "t2", (*w)[2], where);
  const Elem e = (*w)[0], ce = R.sub(R.one(), e);
  const Elem r = R.mul3(xy->first, (*w)[1], e), s = R.mul3(xy->second, (*w)[2], ce);
  expect(R, j, "r", r, where);
  expect(R, j, "s", s, where);
  require(R.mul(c, r) == e && R.mul(r, e) == r, where + ": e = c r");
  require(R.mul(d, s) == ce && R.mul(s, ce) == s, where + ": 1 - e = d s");
  return {e, r, s};
}

struct RowOut {
  RMatrix input, result;
  ElemWord word;
  Elem h;
};

RowOut check_row(const Env& env, const json& j, const std::string& where) {
  const auto& R = *env.ring;
  const auto& I = env.ideal;
  keys(j, {"input", "first", "w", "f", "t3", "t4", "w1", "w2", "f1", "f2", "g", "wp", "second", "c_out", "d_out", "h",
           "word", "result"},
       where);
  const RMatrix alpha = read_matrix(env.ring, j.at("input"), 2, where + ".input");
  require(I.contains(alpha(0, 1)) && I.contains(alpha(1, 0)), where + ": off-diagonal entries in I");
  require(try_inverse(alpha).has_value(), where + ": input invertible");
  const Elem c = alpha(1, 0), d = alpha(1, 1), one = R.one();

  ElemWord word{2, {}};
  const PassOut p1 = check_pass(env, j.at("first"), c, d, where + ".first");
  word.ops.push_back({Side::Right, 1, 0, R.neg(R.mul(p1.s, c))});
  word.ops.push_back({Side::Right, 0, 1, R.neg(R.mul(p1.r, d))});
  const Elem e = p1.e, ce = R.sub(one, e);
  const Elem w = R.add(R.mul(e, c), R.mul(ce, d));
  expect(R, j, "w", w, where);
  auto fx = least_exchange(I, R.mul3(e, w, p1.r));
  require(fx.has_value(), where + ": no exchange witness for e w r");
  const Elem f = (*fx)[0], cf = R.sub(one, f);
  expect(R, j, "f", f, where);
  expect(R, j, "t3", (*fx)[1], where);
  expect(R, j, "t4", (*fx)[2], where);
  const Elem w1 = R.mul3(p1.r, (*fx)[1], f), w2 = R.mul3(p1.s, (*fx)[2], cf);
  expect(R, j, "w1", w1, where);
  expect(R, j, "w2", w2, where);
  require(R.mul3(e, w, w1) == f && R.mul3(ce, w, w2) == cf, where + ": f = e w w1");
  const Elem f1 = R.mul3(w, w1, e), f2 = R.mul3(w, w2, ce);
  expect(R, j, "f1", f1, where);
  expect(R, j, "f2", f2, where);
  require(R.is_idempotent(f1) && R.is_idempotent(f2) && I.contains(f1), where + ": f1, f2 idempotent");
  const Elem g = least_join(env, f1, f2, where);
  expect(R, j, "g", g, where);
  std::optional<Elem> wp;
  for (Elem t = 0; t < R.size() && !wp; ++t)
    if (R.mul(w, t) == g) wp = t;
  require(wp.has_value(), where + ": g in wR");
  expect(R, j, "wp", *wp, where);
  word.ops.push_back({Side::Right, 0, 1, R.mul(p1.r, c)});
  word.ops.push_back({Side::Right, 1, 0, R.neg(R.mul3(*wp, e, c))});

  const Elem c2 = R.mul3(R.sub(one, g), e, c);
  const PassOut p2 = check_pass(env, j.at("second"), c2, w, where + ".second");
  word.ops.push_back({Side::Right, 1, 0, R.neg(R.mul(p2.s, c2))});
  word.ops.push_back({Side::Right, 0, 1, R.neg(R.mul(p2.r, w))});
  const Elem c_out = R.mul(p2.e, c2), d_out = R.mul(R.sub(one, p2.e), w);
  expect(R, j, "c_out", c_out, where);
  expect(R, j, "d_out", d_out, where);

  const auto cr = right_multiples(R, c_out), dr = right_multiples(R, d_out);
  std::optional<Elem> h;
  for (Elem a : cr)
    if (in_list(dr, R.sub(one, a))) {
      h = R.sub(one, a);
      break;
    }
  require(h.has_value(), where + ": R = c'R + d'R");
  expect(R, j, "h", *h, where);
  require(read_word(R, j.at("word"), where + ".word") == word, where + ": word");
  require(word_in_ideal(word, I), where + ": word in E(I)");
  const RMatrix result = apply_elem_word(alpha, word);
  require(read_matrix(env.ring, j.at("result"), 2, where + ".result") == result, where + ": replay");
  require(result(1, 0) == c_out && result(1, 1) == d_out, where + ": last row");

  const Elem ch = R.sub(one, *h);
  require(R.is_idempotent(*h), where + ": h idempotent");
  require(I.contains(ch), where + ": 1 - h in I");
  require(right_multiples(R, ch) == cr, where + ": c'R = (1-h)R");
  require(right_multiples(R, *h) == dr, where + ": d'R = hR");
  require(principal_ideal(env.ring, *h).is_whole(), where + ": RhR = R");
  require(in_list(left_multiples(R, c), c_out), where + ": c' in Rc");
  return {alpha, result, word, *h};
}

RowOut check_col(const Env& env, const json& j, const std::string& where) {
  const auto& R = *env.ring;
  const auto& I = env.ideal;
  keys(j, {"input", "opposite", "k", "word", "result"}, where);
  const RMatrix alpha = read_matrix(env.ring, j.at("input"), 2, where + ".input");
  auto op = opposite_ring(env.ring);
  const Env oenv{op, I.rebind(op)};
  const RowOut row = check_row(oenv, j.at("opposite"), where + ".opposite");
  require(row.input == rebind(transpose(alpha), op), where + ": opposite input is the transpose");
  const ElemWord word = transpose_word(row.word);
  require(read_word(R, j.at("word"), where + ".word") == word, where + ": word");
  expect(R, j, "k", row.h, where);
  const RMatrix result = apply_elem_word(alpha, word);
  require(read_matrix(env.ring, j.at("result"), 2, where + ".result") == result, where + ": replay");
  require(result == transpose(rebind(row.result, env.ring)), where + ": transpose replay");

  const Elem k = row.h, b1 = result(0, 1), d1 = result(1, 1);
  require(word_in_ideal(word, I), where + ": word in E(I)");
  require(R.is_idempotent(k) && I.contains(R.sub(R.one(), k)), where + ": k idempotent, 1 - k in I");
  require(left_multiples(R, b1) == left_multiples(R, R.sub(R.one(), k)), where + ": Rb'' = R(1-k)");
  require(left_multiples(R, d1) == left_multiples(R, k), where + ": Rd'' = Rk");
  require(principal_ideal(env.ring, k).is_whole(), where + ": RkR = R");
  require(in_list(right_multiples(R, alpha(0, 1)), b1), where + ": b'' in bR");
  return {alpha, result, word, k};
}

struct DiagOut {
  RMatrix input;
  Elem a_prime, u;
};

DiagOut check_diag(const Env& env, const json& j, const std::string& where) {
  const auto& R = *env.ring;
  const auto& I = env.ideal;
  const Elem one = R.one();
  keys(j, {"input", "row", "alpha_prime", "col", "one_minus_p", "regular", "t", "v", "zp", "gamma", "beta", "epsilon",
           "u", "u_inv", "a_prime", "result"},
       where);
  const RMatrix alpha = read_matrix(env.ring, j.at("input"), 2, where + ".input");
  require(I.contains(alpha(0, 1)) && I.contains(alpha(1, 0)) && I.contains(R.sub(alpha(1, 1), one)),
          where + ": b, c, d - 1 in I");
  const RowOut row = check_row(env, j.at("row"), where + ".row");
  require(row.input == alpha, where + ": row input");

  ElemWord sl{2, {}}, sr{2, {}}, si{2, {}};
  multiply_sigma(sl, R, Side::Left);
  multiply_sigma(sr, R, Side::Right);
  multiply_sigma_inverse(si, R, Side::Left);
  ElemWord both = sl;
  both.append(sr);
  const RMatrix ap = apply_elem_word(row.result, both);
  require(read_matrix(env.ring, j.at("alpha_prime"), 2, where + ".alpha_prime") == ap, where + ": sigma conjugation");
  const RowOut col = check_col(env, j.at("col"), where + ".col");
  require(col.input == ap, where + ": col input");
  const Elem b1 = col.result(0, 1);

  const auto b1r = right_multiples(R, b1);
  std::optional<Elem> omp;
  for (Elem e : I.members())
    if (R.is_idempotent(e) && right_multiples(R, e) == b1r) {
      omp = e;
      break;
    }
  require(omp.has_value(), where + ": (1-p)R = b'R");
  expect(R, j, "one_minus_p", *omp, where);

  // Unit-regular witness for b'.
  const json& g = j.at("regular");
  const std::string gw = where + ".regular";
  keys(g, {"d", "p", "q", "w", "f", "u"}, gw);
  expect(R, g, "d", b1, gw);
  const auto b1l = left_multiples(R, b1);
  std::optional<Elem> p, q;
  for (Elem e : I.members()) {
    if (!R.is_idempotent(e)) continue;
    if (!p && right_multiples(R, e) == b1r) p = R.sub(one, e);
    if (!q && left_multiples(R, e) == b1l) q = R.sub(one, e);
  }
  require(p && q, gw + ": p, q exist");
  expect(R, g, "p", *p, gw);
  expect(R, g, "q", *q, gw);
  require(principal_ideal(env.ring, *p).is_whole(), gw + ": RpR = R");
  require(principal_ideal(env.ring, *q).is_whole(), gw + ": RqR = R");
  std::optional<Elem> w;
  if (R.mul3(b1, one, b1) == b1) w = one;
  for (Elem u : R.units())
    if (!w && R.mul3(b1, u, b1) == b1) w = u;
  require(w.has_value(), gw + ": d w d = d");
  const Elem f = R.mul(b1, *w), u = *R.inverse(*w), cf = R.sub(one, f);
  expect(R, g, "w", *w, gw);
  expect(R, g, "f", f, gw);
  expect(R, g, "u", u, gw);
  require(R.is_idempotent(f) && R.mul(f, u) == b1, gw + ": d = f u");
  expect(R, j, "u", u, where);
  expect(R, j, "u_inv", *w, where);

  const Elem lam[] = {one, *w};
  const RMatrix lambda = RMatrix::diag(env.ring, lam);
  RMatrix cur = apply_elem_word(col.result, si) * lambda;
  require(cur(1, 1) == f, where + ": (2,2) entry is f");
  const Elem t = cur(1, 0);
  expect(R, j, "t", t, where);
  ElemWord eps{2, {{Side::Right, 1, 0, R.neg(R.mul(f, t))}}};
  const Elem target = R.mul(cf, t);
  std::optional<Elem> v;
  for (Elem x = 0; x < R.size() && !v; ++x)
    if (R.mul(x, cf) == x && R.mul(target, x) == cf) v = x;
  require(v.has_value(), where + ": v in R(1-f) with (1-f)t v = 1-f");
  expect(R, j, "v", *v, where);
  eps.ops.push_back({Side::Right, 0, 1, *v});
  cur = apply_elem_word(cur, eps);
  const Elem zp = cur(0, 1);
  expect(R, j, "zp", zp, where);
  eps.ops.push_back({Side::Right, 1, 0, R.neg(target)});

  ElemWord gamma = sl;
  gamma.append(col.word);
  gamma.append(si);
  gamma.ops.push_back({Side::Left, 0, 1, R.neg(zp)});
  ElemWord beta = row.word;
  beta.append(sr);
  require(read_word(R, j.at("gamma"), where + ".gamma") == gamma, where + ": gamma");
  require(read_word(R, j.at("beta"), where + ".beta") == beta, where + ": beta");
  require(read_word(R, j.at("epsilon"), where + ".epsilon") == eps, where + ": epsilon");

  RMatrix full = apply_elem_word(apply_elem_word(apply_elem_word(alpha, gamma), beta) * lambda, eps);
  require(read_matrix(env.ring, j.at("result"), 2, where + ".result") == full, where + ": replay");
  const Elem ap0 = full(0, 0);
  expect(R, j, "a_prime", ap0, where);
  require(full(0, 1) == R.zero() && full(1, 0) == R.zero() && full(1, 1) == one, where + ": result is a' (+) 1");
  require(R.is_unit(ap0), where + ": a' is a unit");
  require(I.contains(R.sub(ap0, R.mul(alpha(0, 0), *w))), where + ": pi(a') = pi(a u^-1)");
  return {alpha, ap0, u};
}

bool exchange_by_search(const Ideal& I) {
  for (Elem x : I.members())
    if (!least_exchange(I, x)) return false;
  return true;
}

RMatrix padded(const RingPtr& R, Elem a, int m) {
  RMatrix out = RMatrix::identity(R, m);
  out(0, 0) = a;
  return out;
}

void check_lift(const Env& env, const json& j) {
  const auto& R = *env.ring;
  const auto& I = env.ideal;
  const std::string where = "lift";
  keys(j, {"x", "y1", "m", "forced_m4", "orbit", "lifted", "w1", "stages", "y", "truncation", "exchange", "separative",
           "oracle_confirmed"},
       where);
  const RingPtr Q = quotient_ring(I);
  const Elem x = read_elem(R, j.at("x"), "lift.x");
  require(Q->is_unit(Q->project(x)), "lift: x is Fredholm");
  require(j.at("truncation") == json(kSeparativityTruncation), "lift: truncation");
  require(j.at("separative") == json(true), "lift: separative hypothesis recorded");
  require(j.at("exchange") == json(true) && exchange_by_search(I), "lift: exchange hypothesis");
  require(j.at("forced_m4").is_boolean(), "lift: forced_m4");
  const bool forced = j.at("forced_m4").get<bool>();
  require(j.at("m") == json(2) || j.at("m") == json(4), "lift: m in {2, 4}");
  const int m = j.at("m").get<int>();
  require(!forced || m == 4, "lift: forced runs use m = 4");

  const Elem y1 = read_elem(R, j.at("y1"), "lift.y1");
  require(R.is_unit(y1), "lift: y1 is a unit");
  std::vector<Elem> order;
  if (R.is_unit(x)) order.push_back(x);
  for (Elem u : R.units())
    if (u != x) order.push_back(u);
  const RMatrix target = padded(Q, Q->project(x), m);
  auto pos = std::find(order.begin(), order.end(), y1);
  // y1 must be the first candidate with an orbit, after every m = 2 attempt
  // failed when m = 4 was not forced.
  if (m == 4 && !forced)
    for (Elem c : order) require(!e_orbit_factor(Q, 2, padded(Q, Q->project(x), 2), padded(Q, Q->project(c), 2)),
                                 "lift: m = 2 would have sufficed");
  for (auto it = order.begin(); it != pos; ++it)
    require(!e_orbit_factor(Q, m, target, padded(Q, Q->project(*it), m)), "lift: y1 is the first candidate");
  auto orbit = e_orbit_factor(Q, m, target, padded(Q, Q->project(y1), m));
  require(orbit.has_value(), "lift: orbit exists");
  require(read_word(*Q, j.at("orbit"), "lift.orbit") == *orbit, "lift: orbit word");
  require(apply_elem_word(padded(Q, Q->project(y1), m), *orbit) == target, "lift: orbit replay");
  const ElemWord lifted = map_word(*orbit, [&](Elem r) { return Q->lift(r); });
  require(read_word(R, j.at("lifted"), "lift.lifted") == lifted, "lift: least-preimage lift");
  const RMatrix w1 = apply_elem_word(padded(env.ring, y1, m), lifted);
  require(read_matrix(env.ring, j.at("w1"), m, "lift.w1") == w1, "lift: w1 replay");

  const json& stages = j.at("stages");
  require(stages.is_array() && stages.size() == (m == 4 ? 2u : 1u), "lift: stage count");
  RMatrix w = w1;
  if (m == 4) {
    auto S = matrix_ring(env.ring, 2);
    std::vector<Elem> members;
    for (Elem s = 0; s < S->size(); ++s) {
      bool in = true;
      for (Elem e : S->entries(s)) in = in && I.contains(e);
      if (in) members.push_back(s);
    }
    const Env senv{S, Ideal::from_members(S, members)};
    const json& st = stages[0];
    keys(st, {"block", "diag"}, "lift.stages[0]");
    require(st.at("block") == json(2), "lift.stages[0]: block");
    const DiagOut d = check_diag(senv, st.at("diag"), "lift.stages[0].diag");
    require(d.input == to_blocks(w1, S), "lift.stages[0]: input is w1 in blocks");
    const auto e = S->entries(S->mul(d.a_prime, d.u));
    w = RMatrix(env.ring, 2);
    for (int i = 0; i < 4; ++i) w(i / 2, i % 2) = e[static_cast<std::size_t>(i)];
  }
  const json& last = stages[stages.size() - 1];
  const std::string lw = "lift.stages[" + std::to_string(stages.size() - 1) + "]";
  keys(last, {"block", "diag"}, lw);
  require(last.at("block") == json(1), lw + ": block");
  const DiagOut d = check_diag(env, last.at("diag"), lw + ".diag");
  require(d.input == w, lw + ": input");
  const Elem y = R.mul(d.a_prime, d.u);
  expect(R, j, "y", y, where);
  require(R.is_unit(y), "lift: y is a unit");
  require(I.contains(R.sub(x, y)), "lift: x - y in I");
  bool oracle = false;
  for (Elem u : R.units()) oracle = oracle || I.contains(R.sub(x, u));
  require(j.at("oracle_confirmed") == json(oracle), "lift: oracle_confirmed");
}

}  // namespace

json certificate_json(const Ideal& I, const ReductionResult& r) {
  return r.side == Side::Right ? header(I, "row", row_body(r)) : header(I, "col", col_body(r));
}

json certificate_json(const Ideal& I, const DiagonalizationResult& d) { return header(I, "diag", diag_body(d)); }

json certificate_json(const Ideal& I, const LiftCertificate& c) {
  const auto& R = *I.ring();
  json stages = json::array();
  for (const auto& s : c.stages) stages.push_back({{"block", s.block}, {"diag", diag_body(s.diag)}});
  const RingPtr Q = quotient_ring(I);
  json body = {{"x", el(R, c.x)},
               {"y1", el(R, c.y1)},
               {"m", c.m},
               {"forced_m4", c.forced_m4},
               {"orbit", word_to_json(c.orbit, *Q)},
               {"lifted", word_to_json(c.lifted, R)},
               {"w1", c.w1.to_json()},
               {"stages", stages},
               {"y", el(R, c.y)},
               {"truncation", c.truncation},
               {"exchange", true},
               {"separative", true},
               {"oracle_confirmed", c.oracle_confirmed}};
  return header(I, "lift", body);
}

VerifyReport verify_certificate(const json& cert) {
  VerifyReport rep;
  try {
    keys(cert, {"format", "version", "kind", "ring", "ideal", "body"}, "certificate");
    require(cert.at("format") == json("exlift-certificate"), "format");
    require(cert.at("version") == json(kCertificateVersion), "version");
    require(cert.at("kind").is_string(), "kind");
    rep.kind = cert.at("kind").get<std::string>();
    RingPtr R;
    try {
      R = build_ring(cert.at("ring"));
    } catch (const Error&) {
      reject("ring: cannot build");
    }
    require(R->descriptor() == cert.at("ring"), "ring: non-canonical descriptor");
    keys(cert.at("ideal"), {"generators"}, "ideal");
    std::optional<Ideal> I;
    try {
      I = parse_ideal(R, cert.at("ideal"));
    } catch (const Error&) {
      reject("ideal: cannot build");
    }
    json gens = json::array();
    for (Elem g : canonical_generators(*I)) gens.push_back(R->describe(g));
    require(gens == cert.at("ideal").at("generators"), "ideal: non-canonical generators");
    const Env env{R, *I};
    const json& body = cert.at("body");
    if (rep.kind == "row")
      check_row(env, body, "row");
    else if (rep.kind == "col")
      check_col(env, body, "col");
    else if (rep.kind == "diag")
      check_diag(env, body, "diag");
    else if (rep.kind == "lift")
      check_lift(env, body);
    else
      reject("kind: unknown");
    rep.ok = true;
  } catch (const Reject& r) {
    rep.contract = r.contract;
  } catch (const std::exception& e) {
    rep.contract = std::string("malformed: ") + e.what();
  }
  return rep;
}

}  // namespace exlift
