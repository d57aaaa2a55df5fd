import itertools

import pytest

from permgate.errors import (
    CapExceeded,
    ClosureError,
    DimensionError,
    FileFormatError,
)
from permgate.perm import Permutation, enumerate_permutations
from permgate.templates import (
    GateLibrary,
    Template,
    TemplateStore,
    expand_template,
    format_store,
    generate_templates,
    load_store,
    multiplication_table,
    parse_store,
    save_store,
    two_gate_templates,
    verify_template,
)


def canonical_word(seq):
    """Oracle-side symmetry class representative: minimum over rotations of
    the word and of its reversed elementwise inverse."""
    variants = []
    for base in (tuple(seq), tuple(g.inverse() for g in reversed(seq))):
        for r in range(len(base)):
            variants.append(tuple(g.images for g in base[r:] + base[:r]))
    return min(variants)


def identity_words_up_to_3(library):
    """Oracle: every non-degenerate identity word of length 2 or 3 over the
    library, one representative per symmetry class, with words containing a
    shorter identity word as a cyclic factor dropped."""
    identity = Permutation.identity(library.dimension)
    classes = {}
    for g in library.gates:
        if g.is_identity():
            continue
        word = (g, g.inverse())
        classes.setdefault(canonical_word(word), word)
    for g, h in itertools.product(library.gates, repeat=2):
        k = (h * g).inverse()
        word = (g, h, k)
        if k * h * g != identity:
            continue
        if any(w.is_identity() for w in word):
            continue
        # cyclic factor of length 2 composing to identity == adjacent inverses
        if any(word[(i + 1) % 3] == word[i].inverse() for i in range(3)):
            continue
        classes.setdefault(canonical_word(word), word)
    return set(classes)


def s4_library():
    return GateLibrary.symmetric_group(4)


class TestGateLibrary:
    def test_symmetric_group(self):
        lib = GateLibrary.symmetric_group(2)
        assert lib.names == ("(1,2)", "(2,1)")
        assert len(lib) == 2

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError, match="names"):
            GateLibrary(2, [("a", Permutation([0, 1])), ("a", Permutation([1, 0]))])

    def test_duplicate_gates_rejected(self):
        with pytest.raises(ValueError, match="permutations"):
            GateLibrary(2, [("a", Permutation([0, 1])), ("b", Permutation([0, 1]))])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            GateLibrary(2, [("a", Permutation([0, 1, 2]))])

    def test_closure_check(self):
        assert GateLibrary.symmetric_group(3).is_group_closed()
        open_lib = GateLibrary(2, [("X", Permutation([1, 0]))])
        assert not open_lib.is_group_closed()
        with pytest.raises(ClosureError, match="'X'"):
            open_lib.require_group_closed()


class TestMultiplicationTable:
    def test_s2(self):
        lib = GateLibrary.symmetric_group(2)
        assert multiplication_table(lib) == [[0, 1], [1, 0]]

    def test_rearrangement_s4(self):
        lib = s4_library()
        table = multiplication_table(lib)
        full = list(range(24))
        for row in table:
            assert sorted(row) == full
        for j in range(24):
            assert sorted(table[i][j] for i in range(24)) == full

    def test_gate_times_inverse_is_identity(self):
        lib = s4_library()
        table = multiplication_table(lib)
        e = lib.index_of(Permutation.identity(4))
        for i, g in enumerate(lib.gates):
            assert table[i][lib.index_of(g.inverse())] == e

    def test_table_matches_composition(self):
        lib = GateLibrary.symmetric_group(3)
        table = multiplication_table(lib)
        for i, a in enumerate(lib.gates):
            for j, b in enumerate(lib.gates):
                assert lib.gates[table[i][j]] == a * b

    def test_closure_violation(self):
        lib = GateLibrary(3, [("r", Permutation([1, 2, 0])),
                              ("s", Permutation([2, 0, 1]))])
        with pytest.raises(ClosureError, match="product"):
            multiplication_table(lib)

    def test_cap(self):
        lib = GateLibrary(1000, [(f"g{i}", _rotation(1000, i)) for i in range(721)])
        with pytest.raises(CapExceeded):
            multiplication_table(lib)


def _rotation(size, k):
    return Permutation([(j + k) % size for j in range(size)])


class TestTwoGateTemplates:
    def test_count_s4(self):
        out = two_gate_templates(s4_library())
        assert len(out) == 24
        assert all(t.verifies() for t in out)

    def test_s2(self):
        lib = GateLibrary.symmetric_group(2)
        out = two_gate_templates(lib)
        i2 = Permutation.identity(2)
        x = Permutation([1, 0])
        assert [t.gates for t in out] == [(i2, i2), (x, x)]
        assert out[0].is_degenerate()
        assert not out[1].is_degenerate()

    def test_pairs_are_inverses(self):
        for t in two_gate_templates(GateLibrary.symmetric_group(3)):
            u, v = t.gates
            assert v == u.inverse()


class TestExpandTemplate:
    def test_count_and_verify(self):
        lib = s4_library()
        base = two_gate_templates(lib)[7]
        for position in (0, 1):
            out = expand_template(base, position, lib)
            assert len(out) == 24
            assert all(t.verifies() for t in out)
            assert all(len(t.gates) == 3 for t in out)

    def test_degenerate_insertion_present(self):
        lib = s4_library()
        u = Permutation([1, 2, 3, 0])
        base = Template((u, u.inverse()))
        out = expand_template(base, 1, lib)
        assert Template((u, u.inverse(), Permutation.identity(4))) in out

    def test_position_out_of_range(self):
        lib = GateLibrary.symmetric_group(2)
        with pytest.raises(IndexError):
            expand_template(two_gate_templates(lib)[1], 2, lib)


class TestTemplate:
    def test_verify_self_inverse_pair(self):
        x = Permutation([1, 0])
        assert verify_template(Template((x, x)))
        cnot = Permutation.from_one_line("(1,2,4,3)")
        assert verify_template(Template((cnot, cnot)))

    def test_verify_rejects_non_identity(self):
        p = Permutation.from_one_line("(2,3,1,4)")
        assert not verify_template(Template((p, p)))

    def test_too_short(self):
        with pytest.raises(ValueError):
            Template((Permutation.identity(2),))

    def test_mixed_dimensions(self):
        with pytest.raises(DimensionError):
            Template((Permutation.identity(2), Permutation.identity(4)))

    def test_composition_is_leftmost_first(self):
        p = Permutation([1, 2, 0])
        q = Permutation([0, 2, 1])
        assert Template((p, q)).composition() == q * p

    def test_symmetries_preserve_validity(self):
        lib = GateLibrary.symmetric_group(3)
        store = generate_templates(lib, 3)
        for t in store:
            n = len(t.gates)
            for r in range(n):
                rotated = Template(t.gates[r:] + t.gates[:r])
                assert rotated.verifies()
            reversed_inv = Template(tuple(g.inverse() for g in reversed(t.gates)))
            assert reversed_inv.verifies()

    def test_canonical_key_invariance(self):
        g = Permutation([1, 2, 0])
        word = (g, g, g)
        t = Template(word)
        assert Template(word[1:] + word[:1]).canonical_key() == t.canonical_key()
        rev = Template(tuple(x.inverse() for x in reversed(word)))
        assert rev.canonical_key() == t.canonical_key()


class TestTemplateStore:
    def test_add_dedups_by_symmetry(self):
        store = TemplateStore(2)
        x = Permutation([1, 0])
        assert store.add(Template((x, x)))
        assert not store.add(Template((x, x)))
        assert len(store) == 1

    def test_add_rejects_non_identity(self):
        store = TemplateStore(4)
        p = Permutation.from_one_line("(2,3,1,4)")
        with pytest.raises(ValueError, match="identity"):
            store.add(Template((p, p)))

    def test_add_rejects_wrong_dimension(self):
        store = TemplateStore(4)
        x = Permutation([1, 0])
        with pytest.raises(DimensionError):
            store.add(Template((x, x)))

    def test_subsumption_detection(self):
        lib = GateLibrary.symmetric_group(3)
        store = generate_templates(lib, 2)
        x = lib.gates[1]
        padded = Template((x, x.inverse(), x, x.inverse()))
        assert store.subsumes(padded)


class TestGenerate:
    def test_s2_max2(self):
        store = generate_templates(GateLibrary.symmetric_group(2), 2)
        assert [t.one_line() for t in store] == ["(2,1);(2,1)"]

    def test_oracle_s2_max3(self):
        lib = GateLibrary.symmetric_group(2)
        store = generate_templates(lib, 3)
        assert {t.canonical_key() for t in store} == identity_words_up_to_3(lib)

    def test_oracle_s3_max3(self):
        lib = GateLibrary.symmetric_group(3)
        store = generate_templates(lib, 3)
        assert {t.canonical_key() for t in store} == identity_words_up_to_3(lib)

    def test_oracle_s4_max3(self):
        lib = s4_library()
        store = generate_templates(lib, 3)
        assert {t.canonical_key() for t in store} == identity_words_up_to_3(lib)

    def test_s4_store_size_fixtures(self):
        # regression sizes, cross-checked against the word oracle above
        lib = s4_library()
        assert len(generate_templates(lib, 2)) == 16
        assert len(generate_templates(lib, 3)) == 103

    def test_all_verify_and_non_degenerate(self):
        store = generate_templates(s4_library(), 3)
        for t in store:
            assert t.verifies()
            assert not t.is_degenerate()

    def test_requires_closed_library(self):
        lib = GateLibrary(2, [("X", Permutation([1, 0]))])
        with pytest.raises(ClosureError):
            generate_templates(lib, 2)

    def test_max_size_range(self):
        lib = GateLibrary.symmetric_group(2)
        with pytest.raises(ValueError):
            generate_templates(lib, 1)
        with pytest.raises(ValueError):
            generate_templates(lib, 7)

    def test_budget_gives_partial_store(self):
        lib = s4_library()
        with pytest.warns(UserWarning, match="partial"):
            store = generate_templates(lib, 3, max_templates=5)
        assert len(store) == 5
        assert not store.complete
        assert all(t.verifies() for t in store)


class TestStoreFiles:
    def test_round_trip(self, tmp_path):
        store = generate_templates(s4_library(), 3)
        path = tmp_path / "s4.tmpl"
        save_store(store, path)
        loaded = load_store(path)
        assert loaded.dimension == 4
        assert {t.canonical_key() for t in loaded} == {
            t.canonical_key() for t in store}
        # byte-identical on re-save (writer sorts lines)
        save_store(loaded, tmp_path / "again.tmpl")
        assert (tmp_path / "again.tmpl").read_bytes() == path.read_bytes()

    def test_format_text(self):
        store = TemplateStore(2)
        x = Permutation([1, 0])
        store.add(Template((x, x)))
        assert format_store(store) == "templates dim=2\ntemplate: (2,1);(2,1)\n"

    def test_loader_rejects_non_identity_line(self):
        text = "templates dim=4\ntemplate: (2,3,1,4);(2,3,1,4)\n"
        with pytest.raises(FileFormatError, match="line 2"):
            parse_store(text)

    def test_loader_rejects_bad_header(self):
        with pytest.raises(FileFormatError, match="line 1"):
            parse_store("dim=4\n")
        with pytest.raises(FileFormatError, match="line 1"):
            parse_store("")

    def test_loader_rejects_bad_notation(self):
        text = "templates dim=2\ntemplate: (2,1);(2,x)\n"
        with pytest.raises(FileFormatError, match="line 2"):
            parse_store(text)

    def test_loader_rejects_wrong_dimension_gate(self):
        text = "templates dim=4\ntemplate: (2,1);(2,1)\n"
        with pytest.raises(FileFormatError, match="line 2"):
            parse_store(text)

    def test_loader_tolerates_comments_and_order(self):
        text = ("templates dim=2\n"
                "# a comment\n"
                "\n"
                "template: (2,1);(2,1)\n")
        store = parse_store(text)
        assert len(store) == 1
