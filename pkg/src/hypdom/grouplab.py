"""Word-level and counting restrictions linking relator shape to the scheme.

These are the machine-checkable shadows of the group-theoretic restrictions:
squared terms in relators against adjacent identified faces, size-3 classes
against short relators, the numeric commutator test, and the edge-count
bound that forces commuting generators.
"""

from dataclasses import dataclass

from . import geometry, pairings, polytope


@dataclass(frozen=True)
class RestrictionReport:
    has_size3_class: bool
    has_y2z_relator: bool
    squared_term_relators: tuple
    adjacent_identified_sharing_edge: bool
    edge_bound_ok: bool
    parity_ok: bool
    commuting_generator_pairs: tuple  # filled only when maps are available


def has_squared_term(words):
    """(flag, witnesses): some cyclic word repeats a signed letter adjacently."""
    witnesses = []
    for w in words:
        letters = w.letters if isinstance(w, pairings.RelatorWord) else tuple(w)
        n = len(letters)
        if n == 0:
            continue
        if n == 1:
            witnesses.append((letters, 0))
            continue
        for i in range(n):
            if letters[i] == letters[(i + 1) % n]:
                witnesses.append((letters, i))
                break
    return bool(witnesses), tuple(witnesses)


def _is_y2z(letters):
    if len(letters) != 3:
        return False
    for i in range(3):
        a, b, c = letters[i], letters[(i + 1) % 3], letters[(i + 2) % 3]
        if a == b and c != a:
            return True
    return False


@dataclass(frozen=True)
class Y2ZVerdict:
    consistent: bool
    has_size3_orbit: bool
    has_y2z_word: bool
    orbit_witness: tuple
    word_witness: tuple


def y2z_class_link(orbits, words):
    """Compare 'some orbit has size 3' with 'some word has shape YYZ'.

    The two sides can genuinely disagree (a 3-orbit can read three distinct
    letters), so the result is a verdict rather than an exception.
    """
    orbit_witness = tuple(o.edges for o in orbits if o.size == 3)
    word_witness = tuple(w.letters for w in words if _is_y2z(w.letters))
    has3 = bool(orbit_witness)
    hasy = bool(word_witness)
    return Y2ZVerdict(has3 == hasy, has3, hasy, orbit_witness, word_witness)


def commute_numeric(g1, g2, tol=geometry.EPS_ID):
    """True iff the commutator g1 g2 g1^-1 g2^-1 is projectively +-I."""
    comm = g1.compose(g2).compose(g1.inverse()).compose(g2.inverse())
    return geometry.projective_distance(comm, geometry.IDENTITY) <= tol


def edge_bound_check(poly):
    """E <= 2V; when false, any torsion-free domain on this polyhedron must
    have a pair of commuting generators."""
    return poly.edge_count() <= 2 * poly.vertex_count()


def parity_check(orbits, words, poly):
    """When no word has a squared term, every orbit size and the global edge
    and vertex counts must be even; returns that verdict (vacuously true
    when a squared term exists)."""
    squared, _ = has_squared_term(words)
    if squared:
        return True
    sizes_even = all(o.size % 2 == 0 for o in orbits)
    return sizes_even and poly.edge_count() % 2 == 0 and poly.vertex_count() % 2 == 0


def adjacent_identified_sharing_edge(scheme, inc=None):
    """Some pairing identifies two faces that share an edge."""
    inc = inc or polytope.build_incidence(scheme.poly)
    for p in scheme.pairings:
        if set(inc.face_edge_cycle[p.source]) & set(inc.face_edge_cycle[p.target]):
            return True
    return False


def restriction_report(scheme, generators=None, inc=None):
    """Full report for one scheme; generator commutation only with maps."""
    poly = scheme.poly
    inc = inc or polytope.build_incidence(poly)
    orbits = pairings.edge_orbits(scheme, inc)
    words = tuple(pairings.relator_word(o) for o in orbits)
    squared, witnesses = has_squared_term(words)
    verdict = y2z_class_link(orbits, words)
    commuting = []
    if generators:
        symbols = sorted(generators)
        for i, s1 in enumerate(symbols):
            for s2 in symbols[i + 1:]:
                if commute_numeric(generators[s1], generators[s2]):
                    commuting.append((s1, s2))
    return RestrictionReport(
        has_size3_class=verdict.has_size3_orbit,
        has_y2z_relator=verdict.has_y2z_word,
        squared_term_relators=witnesses,
        adjacent_identified_sharing_edge=adjacent_identified_sharing_edge(scheme, inc),
        edge_bound_ok=edge_bound_check(poly),
        parity_ok=parity_check(orbits, words, poly),
        commuting_generator_pairs=tuple(commuting),
    )
