import pytest

from strata.javascan import ScanLog, parse_source, scan_sources, strip_noise


def write_java(root, relpath, text):
    path = root / relpath
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


class TestStripNoise:
    def test_line_comment(self):
        assert strip_noise("int x; // import a.B;").rstrip() == "int x;"

    def test_block_comment_preserves_lines(self):
        out = strip_noise("a /* one\ntwo */ b")
        assert out.count("\n") == 1
        assert "one" not in out and out.startswith("a ")

    def test_string_literal(self):
        out = strip_noise('String s = "import a.B;";')
        assert "import" not in out


class TestParseSource:
    def test_basic_unit(self, tmp_path):
        text = "package com.app;\nimport com.lib.Util;\npublic class Main {}\n"
        unit = parse_source(tmp_path / "Main.java", text, ScanLog())
        assert unit.package == "com.app"
        assert unit.type_name == "Main"
        assert unit.qualified_name == "com.app.Main"
        assert unit.imports == ("com.lib.Util",)

    def test_default_package(self, tmp_path):
        unit = parse_source(tmp_path / "A.java", "class A {}", ScanLog())
        assert unit.package == "" and unit.qualified_name == "A"

    def test_static_import_keeps_owning_type(self, tmp_path):
        text = "package p;\nimport static q.Math.max;\nclass A {}"
        unit = parse_source(tmp_path / "A.java", text, ScanLog())
        assert unit.imports == ("q.Math",)

    def test_public_type_wins_over_first(self, tmp_path):
        text = "package p;\nclass Helper {}\npublic class Main {}"
        log = ScanLog()
        unit = parse_source(tmp_path / "Main.java", text, log)
        assert unit.type_name == "Main"
        assert any("Helper" in m for m in log.messages())

    def test_no_type_declaration(self, tmp_path):
        assert parse_source(tmp_path / "x.java", "package p;", ScanLog()) is None


class TestScanSources:
    def test_two_file_import_edge(self, tmp_path):
        write_java(tmp_path, "app/Main.java",
                   "package app;\nimport lib.Util;\npublic class Main {}")
        write_java(tmp_path, "lib/Util.java",
                   "package lib;\npublic class Util {}")
        g = scan_sources(tmp_path)
        assert g.level == "class"
        assert g.sorted_edges() == [("app.Main", "lib.Util")]

    def test_commented_out_import_is_ignored(self, tmp_path):
        write_java(tmp_path, "app/Main.java",
                   "package app;\n// import lib.Util;\npublic class Main {}")
        write_java(tmp_path, "lib/Util.java",
                   "package lib;\npublic class Util {}")
        g = scan_sources(tmp_path)
        assert not g.edges
        assert g.nodes == ("app.Main", "lib.Util")

    def test_wildcard_import_expands_to_scanned_units(self, tmp_path):
        write_java(tmp_path, "app/Main.java",
                   "package app;\nimport lib.*;\npublic class Main {}")
        write_java(tmp_path, "lib/A.java", "package lib;\npublic class A {}")
        write_java(tmp_path, "lib/B.java", "package lib;\npublic class B {}")
        g = scan_sources(tmp_path)
        assert g.sorted_edges() == [("app.Main", "lib.A"), ("app.Main", "lib.B")]

    def test_external_imports_dropped(self, tmp_path):
        write_java(tmp_path, "Main.java",
                   "package app;\nimport java.util.List;\npublic class Main {}")
        g = scan_sources(tmp_path)
        assert g.nodes == ("app.Main",) and not g.edges

    def test_empty_tree_raises(self, tmp_path):
        with pytest.raises(ValueError, match="no Java source units"):
            scan_sources(tmp_path)

    def test_missing_root_raises(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            scan_sources(tmp_path / "nope")

    def test_nested_directories(self, tmp_path):
        write_java(tmp_path, "a/b/c/Deep.java",
                   "package a.b.c;\npublic class Deep {}")
        g = scan_sources(tmp_path)
        assert g.nodes == ("a.b.c.Deep",)
