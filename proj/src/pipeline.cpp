#include "fpsc/pipeline.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <string>
#include <unordered_map>

#include "fpsc/errors.hpp"

namespace fpsc {

namespace {

std::string ratio_str(long long num, long long den) {
  return std::to_string(num) + "/" + std::to_string(den);
}

// a/b < c/d for nonnegative fractions with positive denominators.
bool frac_less(long long a, long long b, long long c, long long d) {
  return (__int128)a * d < (__int128)c * b;
}

long long syllable_rotation_count(const FPWord& R) {
  const auto& s = R.syllables;
  const long long n = (long long)s.size();
  if (n == 0) return 1;
  std::vector<long long> fail(n + 1, 0);
  long long k = 0;
  for (long long i = 1; i < n; ++i) {
    while (k > 0 && !(s[i] == s[k])) k = fail[k];
    if (s[i] == s[k]) ++k;
    fail[i + 1] = k;
  }
  long long p = n - fail[n];
  return n % p == 0 ? n / p : 1;
}

}  // namespace

PieceProfile build_piece_profile(const Presentation& p) {
  PieceProfile prof;
  try {
    auto records = enumerate_pieces(p);
    prof.exact = true;
    for (const auto& rec : records) {
      ConeEntryProfile e;
      e.ell = rec.syllable_count;
      e.letters = rec.letter_count;
      e.exact = true;
      e.relator = rec.source_a.relator;
      prof.entries.push_back(e);
      if (rec.source_b.relator != rec.source_a.relator) {
        e.relator = rec.source_b.relator;
        prof.entries.push_back(e);
      }
    }
  } catch (const resource_error&) {
    // Too many occurrences to enumerate pairs; fall back to the checker's
    // certified per-relator piece-span upper bounds (n is irrelevant here).
    prof.exact = false;
    StarReport rep = check_cstar(p, 2);
    for (const auto& st : rep.per_relator) {
      ConeEntryProfile e;
      e.relator = st.relator;
      e.ell = st.worst_piece;
      e.letters = -1;
      e.exact = false;
      prof.entries.push_back(e);
    }
  }
  return prof;
}

CubicalPresentation build_cubical_presentation(const Presentation& p, long long q,
                                               long long cone_cell_cap) {
  p.validate();
  check_input(q >= 1, "subdivision q must be >= 1");
  for (size_t i = 0; i < p.relators.size(); ++i) {
    check_input(p.relators[i].syllable_length() >= 2,
                "relator " + std::to_string(i) + " has syllable length < 2; cones need the "
                                                 "alternating block/arc structure");
  }
  check_resource((long long)p.factors.size() * q <= 20'000'000,
                 "wedge at subdivision " + std::to_string(q) + " exceeds the cell cap");

  CubicalPresentation xs;
  xs.pres = p;
  xs.q = q;
  xs.wedge = build_long_wedge(p.factors, (int)q);
  for (size_t i = 0; i < p.relators.size(); ++i) {
    ConeInfo ci;
    ci.relator = p.relators[i];
    ci.stats = necklace_stats(p.relators[i]);
    ci.sys = ci.stats.systole(q);
    ci.cells = necklace_cell_count(p.relators[i], q);
    if (ci.cells <= cone_cell_cap) {
      ci.necklace = build_necklace(p.relators[i], xs.wedge);
      ci.materialized = true;
    }
    xs.cones.push_back(std::move(ci));
  }
  xs.profile = build_piece_profile(p);
  return xs;
}

std::vector<ConePieceEntry> cone_piece_diameters(const CubicalPresentation& xs) {
  std::vector<ConePieceEntry> out;
  for (const auto& e : xs.profile.entries) {
    if (e.ell <= 0) continue;
    ConePieceEntry pe;
    pe.relator = e.relator;
    pe.ell = e.ell;
    pe.ell_prime = 2 * (e.ell - 1);
    check_internal(2 * pe.ell >= pe.ell_prime, "piece meets more arcs than blocks allow");
    const long long M = wall_piece_bound(xs.cones[e.relator].stats);
    pe.bound = e.ell * M + xs.q * pe.ell_prime;
    pe.exact = e.exact;
    if (e.exact) {
      pe.exact_diameter = e.letters + 2 * xs.q * (e.ell - 1);
      check_internal(pe.exact_diameter <= pe.bound, "exact piece diameter exceeds its bound");
    }
    out.push_back(pe);
  }
  return out;
}

CubicalPresentationReport check_cubical_cprime(const CubicalPresentation& xs, int alpha_den) {
  check_input(alpha_den >= 2, "alpha denominator must be >= 2");
  CubicalPresentationReport rep;
  rep.alpha_den = alpha_den;
  rep.q = xs.q;
  rep.exact = xs.profile.exact;
  rep.passed = true;

  auto bump_achieved = [&](long long num, long long den) {
    if (frac_less(rep.achieved_num, rep.achieved_den, num, den)) {
      rep.achieved_num = num;
      rep.achieved_den = den;
    }
  };

  for (size_t i = 0; i < xs.cones.size(); ++i) {
    ConeCPrimeReport cr;
    cr.relator = (int)i;
    cr.sys = xs.cones[i].sys;
    cr.wall_bound = wall_piece_bound(xs.cones[i].stats);
    cr.wall_ok = (__int128)alpha_den * cr.wall_bound < cr.sys;
    bump_achieved(cr.wall_bound, cr.sys);
    rep.cones.push_back(cr);
  }
  for (const auto& pe : cone_piece_diameters(xs)) {
    ConeCPrimeReport& cr = rep.cones[pe.relator];
    cr.worst_cone_bound = std::max(cr.worst_cone_bound, pe.bound);
    if ((__int128)alpha_den * pe.bound >= cr.sys) cr.cone_ok = false;
    bump_achieved(pe.bound, cr.sys);
  }
  for (const auto& cr : rep.cones) rep.passed = rep.passed && cr.cone_ok && cr.wall_ok;
  if (!rep.exact) {
    rep.notes.push_back(
        "cone-piece spans are certified per-relator upper bounds, not exhaustive enumeration");
  }
  return rep;
}

namespace {

struct BatteryData {
  std::vector<NecklaceStats> stats;
  PieceProfile profile;
};

// Failing inequalities of the subdivision battery at q; stops at the first
// failure when stop_early.
std::vector<std::string> battery_failures(const BatteryData& bd, int n, long long q,
                                          bool stop_early) {
  std::vector<std::string> fails;
  auto fail = [&](const std::string& s) { fails.push_back(s); };
  for (size_t i = 0; i < bd.stats.size(); ++i) {
    const long long M = bd.stats[i].max_block_diameter;
    const long long sys = bd.stats[i].systole(q);
    if (q <= (__int128)n * M) {
      fail("q = " + std::to_string(q) + " fails q > n*M_" + std::to_string(i) + " = " +
           std::to_string((long long)n * M));
      if (stop_early) return fails;
    }
    if ((__int128)n * M >= sys) {
      fail("wall-piece bound M_" + std::to_string(i) + " = " + std::to_string(M) +
           " is not below sys/" + std::to_string(n) + " = " + ratio_str(sys, n));
      if (stop_early) return fails;
    }
  }
  for (const auto& e : bd.profile.entries) {
    if (e.ell <= 0) continue;
    const long long M = bd.stats[e.relator].max_block_diameter;
    const long long sys = bd.stats[e.relator].systole(q);
    const __int128 bound = (__int128)e.ell * M + (__int128)2 * q * (e.ell - 1);
    if ((__int128)n * bound >= sys) {
      fail("cone-piece bound " + std::to_string((long long)bound) + " in cone " +
           std::to_string(e.relator) + " is not below sys/" + std::to_string(n) + " = " +
           ratio_str(sys, n));
      if (stop_early) return fails;
    }
  }
  return fails;
}

BatteryData battery_data(const Presentation& p) {
  BatteryData bd;
  for (const auto& R : p.relators) bd.stats.push_back(necklace_stats(R));
  bd.profile = build_piece_profile(p);
  return bd;
}

long long choose_subdivision_impl(const Presentation& p, int n, const StarReport& star) {
  if (!star.passed) {
    std::string msg = "choose_subdivision requires C'_*(1/" + std::to_string(n) +
                      "); worst piece ratio is " + ratio_str(star.worst_num, star.worst_den);
    if (star.duplicate_relators) msg += " (duplicate relators)";
    throw input_error(msg);
  }
  BatteryData bd = battery_data(p);
  long long max_m = 0;
  for (const auto& s : bd.stats) max_m = std::max(max_m, s.max_block_diameter);
  // Any feasible q satisfies q > n*max M_i, so the scan starts there.
  long long q = (long long)n * max_m + 1;
  long long iters = 0;
  while (true) {
    check_resource(++iters <= 2'000'000, "subdivision search exceeded 2e6 candidates");
    if (battery_failures(bd, n, q, true).empty()) break;
    ++q;
  }
  CubicalPresentation xs = build_cubical_presentation(p, q, 0);
  CubicalPresentationReport rep = check_cubical_cprime(xs, n);
  check_internal(rep.passed,
                 "subdivision q = " + std::to_string(q) + " failed re-verification at alpha = 1/" +
                     std::to_string(n));
  return q;
}

}  // namespace

SubdivisionCheck verify_subdivision(const Presentation& p, int n, long long q) {
  p.validate();
  check_input(n >= 2, "denominator n must be >= 2");
  check_input(q >= 1, "subdivision q must be >= 1");
  SubdivisionCheck out;
  out.q = q;
  out.failures = battery_failures(battery_data(p), n, q, false);
  out.ok = out.failures.empty();
  return out;
}

long long choose_subdivision(const Presentation& p, int n) {
  p.validate();
  check_input(n >= 2, "denominator n must be >= 2");
  return choose_subdivision_impl(p, n, check_cstar(p, n));
}

namespace {

// Complement of a hyperplane: every vertex, every non-dual edge, every square
// none of whose sides is dual.
struct Complement {
  std::vector<char> edge_removed;
  std::vector<int> squares;
};

Complement complement_of(const CubeComplex& C, const Hyperplane& h) {
  Complement comp;
  comp.edge_removed.assign(C.edges.size(), 0);
  for (int e : h.edges) comp.edge_removed[e] = 1;
  for (int s = 0; s < (int)C.squares.size(); ++s) {
    bool keep = true;
    for (const auto& side : C.squares[s].sides) keep = keep && !comp.edge_removed[side.edge];
    if (keep) comp.squares.push_back(s);
  }
  return comp;
}

bool complement_connected(const CubeComplex& C,
                          const std::vector<std::vector<std::pair<int, int>>>& adj,
                          const Complement& comp) {
  if (C.num_vertices == 0) return true;
  std::vector<char> seen(C.num_vertices, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [e, u] : adj[v]) {
      if (!comp.edge_removed[e] && !seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == C.num_vertices;
}

// Every cycle of the complement winds zero against the degree labeling, i.e.
// a vertex potential with label differences exists.
bool complement_zero_winding(const CubeComplex& C, const DegreeLabeling& d,
                             const std::vector<std::vector<std::pair<int, int>>>& adj,
                             const Complement& comp) {
  std::vector<long long> phi(C.num_vertices, 0);
  std::vector<char> seen(C.num_vertices, 0);
  for (int s = 0; s < C.num_vertices; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::vector<int> stack = {s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [e, u] : adj[v]) {
        if (comp.edge_removed[e]) continue;
        long long step = C.edges[e].u == v ? d.label[e] : -d.label[e];
        if (!seen[u]) {
          seen[u] = 1;
          phi[u] = phi[v] + step;
          stack.push_back(u);
        } else if (phi[u] != phi[v] + step) {
          return false;
        }
      }
    }
  }
  return true;
}

// Presentation collapse: spanning tree, one generator per non-tree edge, one
// relation per surviving square. Generators are killed by Tietze elimination
// of single-occurrence generators; trivial pi_1 iff all of them die.
bool complement_simply_connected(const CubeComplex& C,
                                 const std::vector<std::vector<std::pair<int, int>>>& adj,
                                 const Complement& comp, std::string* why) {
  std::vector<int> gen_of(C.edges.size(), -1);
  std::vector<char> tree(C.edges.size(), 0);
  std::vector<char> seen(C.num_vertices, 0);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = 1;
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (auto [e, u] : adj[v]) {
      if (comp.edge_removed[e] || seen[u]) continue;
      seen[u] = 1;
      tree[e] = 1;
      bfs.push(u);
    }
  }
  int gens = 0;
  for (int e = 0; e < (int)C.edges.size(); ++e) {
    if (!comp.edge_removed[e] && !tree[e]) gen_of[e] = gens++;
  }
  if (gens == 0) return true;

  auto free_reduce = [](std::vector<int>& w) {
    std::vector<int> out;
    for (int g : w) {
      if (!out.empty() && out.back() == -g) {
        out.pop_back();
      } else {
        out.push_back(g);
      }
    }
    while (out.size() >= 2 && out.front() == -out.back()) {
      out.erase(out.begin());
      out.pop_back();
    }
    w = std::move(out);
  };

  std::vector<std::vector<int>> rels;
  for (int s : comp.squares) {
    std::vector<int> w;
    for (const auto& side : C.squares[s].sides) {
      int g = gen_of[side.edge];
      if (g >= 0) w.push_back(side.reversed ? -(g + 1) : g + 1);
    }
    free_reduce(w);
    if (!w.empty()) rels.push_back(std::move(w));
  }

  std::vector<char> alive(gens, 1);
  std::vector<std::vector<int>> solution(gens);  // killed generator -> word
  long long work = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t r = 0; r < rels.size(); ++r) {
      // A generator occurring exactly once in this relation can be solved for.
      std::unordered_map<int, int> count;
      for (int g : rels[r]) ++count[std::abs(g)];
      int target = 0;
      for (auto [g, c] : count) {
        if (c == 1) {
          target = g;
          break;
        }
      }
      if (target == 0) continue;
      // Rotate the occurrence to the front: r = g * w, so g = w^{-1}.
      std::vector<int>& w = rels[r];
      size_t at = 0;
      while (std::abs(w[at]) != target) ++at;
      std::rotate(w.begin(), w.begin() + at, w.end());
      bool negated = w[0] < 0;
      std::vector<int> value;
      for (size_t i = w.size(); i > 1; --i) value.push_back(-w[i - 1]);
      if (negated) {
        std::reverse(value.begin(), value.end());
        for (int& g : value) g = -g;
      }
      alive[target - 1] = 0;
      solution[target - 1] = value;
      rels.erase(rels.begin() + r);
      for (auto& rel : rels) {
        std::vector<int> next;
        for (int g : rel) {
          if (std::abs(g) == target) {
            if (g > 0) {
              next.insert(next.end(), value.begin(), value.end());
            } else {
              for (size_t i = value.size(); i > 0; --i) next.push_back(-value[i - 1]);
            }
          } else {
            next.push_back(g);
          }
        }
        work += (long long)next.size();
        check_resource(work <= 10'000'000, "pi1 collapse exceeded its work cap");
        free_reduce(next);
        rel = std::move(next);
      }
      rels.erase(std::remove_if(rels.begin(), rels.end(),
                                [](const std::vector<int>& x) { return x.empty(); }),
                 rels.end());
      progress = true;
      break;
    }
  }
  int left = 0;
  for (char a : alive) left += a;
  if (left > 0 && why) {
    *why = "pi1 collapse left " + std::to_string(left) + " generators and " +
           std::to_string(rels.size()) + " relations";
  }
  return left == 0;
}

}  // namespace

PropernessReport check_properness_hypotheses(const CubicalPresentation& xs) {
  PropernessReport rep;
  rep.q = xs.q;
  rep.ok = true;
  for (size_t i = 0; i < xs.cones.size(); ++i) {
    const ConeInfo& cone = xs.cones[i];
    ConePropernessReport cr;
    cr.relator = (int)i;
    if (cone.stats.is_circle_cone) {
      // A circle's hyperplanes are its edges: carriers are closed edges of
      // diameter 1 and each complement is a path. The closed form avoids a
      // per-hyperplane BFS that would be quadratic in the circle length.
      cr.structural = true;
      cr.hyperplane_count = cone.sys;
      cr.worst_carrier_diameter = 1;
      cr.carriers_embedded = true;
      cr.carrier_diameter_ok = 20 < cone.sys;
      if (!cr.carrier_diameter_ok) {
        cr.failures.push_back("carrier diameter 1 is not below sys/20 = " +
                              ratio_str(cone.sys, 20));
      }
      cr.ok = cr.carrier_diameter_ok;
    } else {
      check_resource(cone.materialized,
                     "cone " + std::to_string(i) + " exceeds the materialization cap and is " +
                         "not a circle; properness checks need the complex");
      const CubeComplex& C = cone.necklace.complex;
      std::vector<std::vector<std::pair<int, int>>> adj(C.num_vertices);
      for (int e = 0; e < (int)C.edges.size(); ++e) {
        adj[C.edges[e].u].push_back({e, C.edges[e].v});
        adj[C.edges[e].v].push_back({e, C.edges[e].u});
      }
      auto hyps = hyperplanes(C);
      cr.hyperplane_count = (long long)hyps.size();
      check_resource((long long)hyps.size() *
                             ((long long)C.num_vertices + (long long)C.edges.size()) <=
                         200'000'000,
                     "properness per-hyperplane checks exceed the work cap");
      std::vector<char> endpoint(C.num_vertices, 0);
      for (const auto& h : hyps) {
        auto note = [&](const std::string& s) {
          if (cr.failures.size() < 20) {
            cr.failures.push_back("hyperplane " + std::to_string(h.id) + ": " + s);
          }
        };
        bool embedded = !h.self_crossing;
        for (int e : h.edges) {
          const Edge& ed = C.edges[e];
          if (ed.u == ed.v || endpoint[ed.u] || endpoint[ed.v]) embedded = false;
          endpoint[ed.u] = endpoint[ed.v] = 1;
        }
        for (int e : h.edges) endpoint[C.edges[e].u] = endpoint[C.edges[e].v] = 0;
        if (!embedded) {
          cr.carriers_embedded = false;
          note("carrier is not embedded");
        }
        int diam = diameter(C, carrier(C, h));
        cr.worst_carrier_diameter = std::max(cr.worst_carrier_diameter, (long long)diam);
        if ((__int128)20 * diam >= cone.sys) {
          cr.carrier_diameter_ok = false;
          note("carrier diameter " + std::to_string(diam) + " is not below sys/20 = " +
               ratio_str(cone.sys, 20));
        }
        Complement comp = complement_of(C, h);
        if (!complement_connected(C, adj, comp)) {
          cr.complements_connected = false;
          note("complement is disconnected");
          continue;
        }
        if (!complement_zero_winding(C, cone.necklace.degree, adj, comp)) {
          cr.complements_zero_winding = false;
          note("complement carries a cycle of nonzero degree");
        }
        std::string why;
        if (!complement_simply_connected(C, adj, comp, &why)) {
          cr.complements_simply_connected = false;
          note(why);
        }
      }
      cr.ok = cr.carriers_embedded && cr.carrier_diameter_ok && cr.complements_connected &&
              cr.complements_zero_winding && cr.complements_simply_connected;
    }
    rep.ok = rep.ok && cr.ok;
    rep.cones.push_back(std::move(cr));
  }
  return rep;
}

bool proper_power_check(const FPWord& R) {
  check_input(!R.empty(), "proper power check needs a nonempty word");
  check_input(is_cyclically_reduced(R), "proper power check needs a cyclically reduced word");
  return !is_proper_power(R);
}

std::vector<ConeWallReport> check_cone_walls(const CubicalPresentation& xs) {
  std::vector<ConeWallReport> out;
  for (size_t i = 0; i < xs.cones.size(); ++i) {
    const ConeInfo& cone = xs.cones[i];
    ConeWallReport r;
    r.relator = (int)i;
    r.circle_length = cone.sys;
    r.even = cone.sys % 2 == 0;
    if (cone.materialized) {
      const NecklaceComplex& Y = cone.necklace;
      if (r.even) {
        AntipodalWallStructure W = antipodal_walls(Y);
        r.wall_count = (long long)W.walls.size();
        r.b8_condition1 = check_b8_condition1(Y, W);
        r.b8_condition3 = check_b8_condition3(Y, W);
      }
      if (cone.stats.letters % 2 == 0) {
        r.letter_wall_count = (long long)antipodal_walls(Y, true).walls.size();
      }
      r.symmetry_count = (long long)necklace_symmetry_rotations(Y).size();
    } else if (cone.stats.is_circle_cone) {
      r.structural = true;
      CircleWallSummary s = circle_wall_summary(cone.sys);
      r.wall_count = s.wall_count;
      r.b8_condition1 = s.condition1;
      r.b8_condition3 = r.even && s.condition3;
      if (cone.stats.letters % 2 == 0) r.letter_wall_count = cone.stats.letters / 2;
      r.symmetry_count = syllable_rotation_count(cone.relator);
    } else {
      throw resource_error("cone " + std::to_string(i) +
                           " exceeds the materialization cap and is not a circle; wall checks "
                           "need the complex");
    }
    out.push_back(r);
  }
  return out;
}

BuildReport run_build(const Presentation& p, int n, long long q_override,
                      long long cone_cell_cap) {
  p.validate();
  check_input(n >= 2, "denominator n must be >= 2");
  check_input(q_override >= 0, "q override must be >= 1 when given");
  BuildReport rep;
  rep.n = n;
  rep.star = check_cstar(p, n);
  rep.proper_powers_ok = true;
  for (const auto& R : p.relators) {
    bool npp = proper_power_check(R);
    rep.relator_not_proper_power.push_back(npp);
    rep.proper_powers_ok = rep.proper_powers_ok && npp;
  }
  if (!rep.proper_powers_ok) {
    rep.notes.push_back("some relator is a proper power; maximal-cyclicity surrogate fails");
  }

  if (q_override > 0) {
    rep.q = q_override;
    rep.q_overridden = true;
    rep.q_chosen = true;
  } else if (rep.star.passed) {
    rep.q = choose_subdivision_impl(p, n, rep.star);
    rep.q_chosen = true;
  } else {
    rep.notes.push_back("star condition C'_*(1/" + std::to_string(n) +
                        ") failed with worst ratio " +
                        ratio_str(rep.star.worst_num, rep.star.worst_den) +
                        "; no subdivision chosen");
    rep.ok = false;
    return rep;
  }

  CubicalPresentation xs = build_cubical_presentation(p, rep.q, cone_cell_cap);
  rep.cubical = check_cubical_cprime(xs, n);
  rep.properness = check_properness_hypotheses(xs);
  rep.walls = check_cone_walls(xs);
  bool walls_ok = true;
  for (const auto& w : rep.walls) {
    if (!w.even) {
      rep.notes.push_back("cone " + std::to_string(w.relator) +
                          " has an odd circle; the wall structure needs a further circle "
                          "subdivision that is out of scope");
    }
    walls_ok = walls_ok && w.even && w.b8_condition1 && w.b8_condition3;
  }
  for (const auto& c : xs.cones) {
    if (!c.materialized) {
      rep.notes.push_back("cone " + std::to_string(&c - xs.cones.data()) +
                          " kept structural: " + std::to_string(c.cells) +
                          " cells exceed the cap of " + std::to_string(cone_cell_cap));
    }
  }
  rep.ok = rep.star.passed && rep.proper_powers_ok && rep.cubical.passed && rep.properness.ok &&
           walls_ok;
  return rep;
}

}  // namespace fpsc
