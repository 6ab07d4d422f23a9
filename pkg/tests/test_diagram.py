import unittest

from cfkinv.config.utils.default_config import default_data_dir
from cfkinv.core.diagram import (
    Parameterization,
    build_diagram,
    enumerate_parameterizations,
    load_knot_table,
    lookup_knot,
    validate_parameterization,
)
from cfkinv.core.type_mapping import ArcKind, SourceKind
from cfkinv.errors import KnotNotFound, ParameterizationInvalid, ParseError, PendingKnotData

TABLE_ONE = (
    "10_128 10_132 10_136 10_139 10_145 10_161 11n12 11n19 11n20 11n38 "
    "11n57 11n61 11n70 11n79 11n96 11n102 11n104 11n111 11n135"
).split()


class TestParameterization(unittest.TestCase):
    """(k, r, c, s) tuples."""

    def test_parse(self):
        self.assertEqual(Parameterization.parse("(6, 4, -3, 1)"), Parameterization(6, 4, -3, 1))
        with self.assertRaises(ParseError):
            Parameterization.parse("1,2,3")
        with self.assertRaises(ParseError):
            Parameterization.parse("1,2,x,4")

    def test_derived_counts(self):
        p = Parameterization(7, 3, -3, 4)
        self.assertEqual(p.n_points, 15)
        self.assertEqual(p.t, 5)
        self.assertEqual(str(p), "(7,3,-3,4)")

    def test_validate(self):
        self.assertTrue(validate_parameterization(Parameterization(14, 7, -7, 1)).ok)
        report = validate_parameterization(Parameterization(1, 2, 0, 0))
        self.assertFalse(report.ok)
        self.assertIn("r = 2 exceeds k = 1", report.violations)

    def test_enumerate(self):
        tuples = list(enumerate_parameterizations(2))
        self.assertEqual(tuples[:2], [Parameterization(0, 0, 0, 0), Parameterization(0, 0, 0, 1)])
        self.assertEqual(tuples, sorted(tuples))
        self.assertTrue(all(validate_parameterization(p).ok for p in tuples))


class TestBuildDiagram(unittest.TestCase):
    """α arcs and the lift of α."""

    def test_trefoil_arcs(self):
        d = build_diagram(Parameterization(1, 1, 1, 1))
        self.assertEqual(d.points, ("x0", "x1", "x-1"))
        self.assertEqual(len(d.arcs_of(ArcKind.loop_left)), 1)
        self.assertEqual(len(d.arcs_of(ArcKind.bridge_1)), 1)
        self.assertEqual(d.arcs_of(ArcKind.bridge_2), ())
        self.assertEqual(d.side_endpoints(), {"left": [-1, 0, 1], "right": [-1, 0, 1]})

    def test_every_point_is_met_once_per_side(self):
        for p in (Parameterization(1, 1, 1, 1), Parameterization(6, 4, -3, 1)):
            d = build_diagram(p)
            expected = list(range(-p.k, p.k + 1))
            self.assertEqual(d.side_endpoints(), {"left": expected, "right": expected})
            self.assertEqual(abs(d.period[1]), 1)
            self.assertEqual(sorted(cr.label for cr in d.crossings), expected)

    def test_to_dict(self):
        data = build_diagram(Parameterization(1, 1, 1, 1)).to_dict()
        self.assertEqual(data["parameterization"], {"k": 1, "r": 1, "c": 1, "s": 1})
        self.assertEqual({arc["kind"] for arc in data["alpha_arcs"]}, {"loop-left", "loop-right", "bridge-family-1"})

    def test_invalid(self):
        with self.assertRaises(ParameterizationInvalid):
            build_diagram(Parameterization(1, 2, 0, 0))


class TestKnotTable(unittest.TestCase):
    """The shipped knot table."""

    def setUp(self):
        self.entries = load_knot_table(default_data_dir() / "knot_table.tsv")

    def test_covers_every_table_knot(self):
        names = {entry.name for entry in self.entries}
        self.assertTrue(set(TABLE_ONE) <= names)
        self.assertTrue({"12n404", "12n749", "3_1", "4_1", "0_1"} <= names)

    def test_lookup(self):
        self.assertEqual(lookup_knot(self.entries, "10_161").parameterization, Parameterization(6, 4, -3, 1))
        self.assertEqual(lookup_knot(self.entries, "12n404").parameterization, Parameterization(14, 7, -7, 1))
        self.assertEqual(lookup_knot(self.entries, "12n749").parameterization, Parameterization(7, 3, -3, 4))
        entry = lookup_knot(self.entries, "11n57")
        self.assertEqual(entry.kind, SourceKind.complex)
        self.assertTrue(entry.complex_path.is_file())
        with self.assertRaises(PendingKnotData):
            lookup_knot(self.entries, "11n96")
        with self.assertRaises(KnotNotFound):
            lookup_knot(self.entries, "13n1")

    def test_malformed_tables(self):
        import tempfile
        from pathlib import Path

        with tempfile.TemporaryDirectory() as folder:
            path = Path(folder) / "table.tsv"
            path.write_text("name\tkind\tvalue\tprovenance\nk\tparams\t1,2,0,0\t\n")
            with self.assertRaises(ParseError) as raised:
                load_knot_table(path)
            self.assertEqual(raised.exception.line, 2)

            path.write_text("name\tkind\tvalue\tprovenance\nk\tdrawing\t\t\n")
            with self.assertRaises(ParseError):
                load_knot_table(path)

            path.write_text("name\tkind\tvalue\tprovenance\nk\tcomplex\tmissing.json\t\n")
            with self.assertRaises(ParseError):
                load_knot_table(path)

            path.write_text("name\tvalue\nk\t1,1,1,1\n")
            with self.assertRaises(ParseError):
                load_knot_table(path)

            with self.assertRaises(ParseError):
                load_knot_table(Path(folder) / "absent.tsv")
