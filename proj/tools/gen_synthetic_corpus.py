#!/usr/bin/env python3
"""Generate the synthetic reduction corpus and its expected metrics.

Writes corpus.json, tests/*.java, trees/*.json and expected_records.csv
under the output directory (default data/corpus/synthetic). Every entry has
a scripted oracle with one failure set; the expected minimal test is found
by enumerating all ancestor-closed statement subsets, independently of the
C++ reducer.
"""

import argparse
import json
import random
from fractions import Fraction
from itertools import combinations
from math import floor
from pathlib import Path

TREE_KINDS = {"If", "For", "ForEach", "While", "DoWhile", "Try",
              "SynchronizedBlock", "Block", "LabeledStmt"}

LEAVES = [
    ("LocalDeclaration", "int v{k} = {n};"),
    ("LocalDeclaration", 'String s{k} = "a;b{{c}}";'),
    ("LocalDeclaration", "final List<String> l{k} = new ArrayList<>();"),
    ("ExpressionStmt", "assertEquals({n}, compute({k}));"),
    ("ExpressionStmt", "counter += {n};"),
    ("ExpressionStmt", "items.forEach(e -> {{ sink.accept(e + {n}); }});"),
    ("ExpressionStmt", 'assertTrue("case {k}", check({n}));'),
    ("ExpressionStmt", "reader.reset({n});"),
]


class Node:
    def __init__(self, kind):
        self.kind = kind
        self.children = []
        self.span = None
        self.braceless = False
        self.id = None

    @property
    def tree(self):
        return self.kind in TREE_KINDS


class Writer:
    def __init__(self):
        self.parts = []
        self.size = 0

    def put(self, text):
        self.parts.append(text)
        self.size += len(text.encode())

    def text(self):
        return "".join(self.parts)


class Generator:
    def __init__(self, rng, budget):
        self.rng = rng
        self.budget = budget
        self.counter = 0

    def fresh(self):
        self.counter += 1
        return self.counter

    def leaf(self):
        kind, tpl = self.rng.choice(LEAVES)
        node = Node(kind)
        node.tpl = tpl.format(k=self.fresh(), n=self.rng.randint(0, 99))
        self.budget -= 1
        return node

    def statement(self, depth):
        # Depth counts TreeStmt nesting; leaves sit at most three levels deep.
        if depth >= 3 or self.budget < 2 or self.rng.random() < 0.55:
            return self.leaf()
        kind = self.rng.choice(["If", "If", "For", "ForEach", "While", "DoWhile",
                                "Try", "SynchronizedBlock", "Block", "LabeledStmt"])
        node = Node(kind)
        self.budget -= 1
        k = self.fresh()
        if kind == "LabeledStmt":
            inner = Node(self.rng.choice(["For", "While"]))
            self.budget -= 1
            inner.braceless = True
            inner.label = f"outer{k}"
            inner.head = self.loop_head(inner.kind, k)
            inner.body = self.body(depth + 2)
            inner.children = inner.body
            node.children = [inner]
            return node
        if kind == "If":
            node.cond = f"flag{k}"
            if self.budget >= 1 and self.rng.random() < 0.25:
                child = self.leaf()
                child.braceless = True
                node.then = [child]
                node.braceless_then = True
            else:
                node.then = self.body(depth + 1)
                node.braceless_then = False
            node.els = self.body(depth + 1) if self.rng.random() < 0.35 else None
            node.children = node.then + (node.els or [])
            return node
        if kind == "Try":
            node.body = self.body(depth + 1)
            node.catch = self.body(depth + 1)
            node.fin = self.body(depth + 1) if self.rng.random() < 0.3 else None
            node.children = node.body + node.catch + (node.fin or [])
            return node
        node.head = self.loop_head(kind, k)
        node.body = self.body(depth + 1)
        node.children = node.body
        return node

    def loop_head(self, kind, k):
        return {
            "For": f"for (int i{k} = 0; i{k} < {self.rng.randint(1, 9)}; i{k}++)",
            "ForEach": f"for (String item{k} : items)",
            "While": f"while (it{k}.hasNext())",
            "DoWhile": "do",
            "SynchronizedBlock": f"synchronized (lock{k})",
            "Block": "",
        }[kind]

    def body(self, depth):
        out = []
        for _ in range(self.rng.randint(0, 3)):
            if self.budget <= 0:
                break
            out.append(self.statement(depth))
        return out


def emit_block(w, stmts, indent):
    w.put("{\n")
    for s in stmts:
        emit(w, s, indent + 1)
    w.put("  " * indent + "}")


def emit(w, node, indent, inline=False):
    if not inline:
        w.put("  " * indent)
    begin = w.size
    k = node.kind
    if not node.tree:
        w.put(node.tpl)
    elif k == "If":
        w.put(f"if ({node.cond}) ")
        if node.braceless_then:
            emit(w, node.then[0], indent, inline=True)
        else:
            emit_block(w, node.then, indent)
        if node.els is not None:
            w.put(" else ")
            emit_block(w, node.els, indent)
    elif k == "Try":
        w.put("try ")
        emit_block(w, node.body, indent)
        w.put(" catch (IllegalStateException e) ")
        emit_block(w, node.catch, indent)
        if node.fin is not None:
            w.put(" finally ")
            emit_block(w, node.fin, indent)
    elif k == "LabeledStmt":
        inner = node.children[0]
        w.put(f"{inner.label}: ")
        emit(w, inner, indent, inline=True)
    elif k == "DoWhile":
        w.put("do ")
        emit_block(w, node.body, indent)
        w.put(" while (retry());")
    elif k == "Block":
        emit_block(w, node.body, indent)
    else:
        w.put(node.head + " ")
        emit_block(w, node.body, indent)
    node.span = (begin, w.size)
    if not inline:
        w.put("\n")


def preorder(roots):
    out = []

    def walk(n):
        out.append(n)
        for c in n.children:
            walk(c)

    for r in roots:
        walk(r)
    return out


def make_test(rng, name):
    while True:
        gen = Generator(rng, rng.randint(4, 16))
        roots = []
        while gen.budget > 0 and len(roots) < 8:
            roots.append(gen.statement(0))
        nodes = preorder(roots)
        if 3 <= len(nodes) <= 16:
            break
    w = Writer()
    w.put(f"@Test\npublic void {name}() throws Exception {{\n")
    for r in roots:
        emit(w, r, 1)
    w.put("}\n")
    for i, n in enumerate(nodes):
        n.id = i
    return w.text(), roots, nodes


def parents(nodes):
    par = {}
    for n in nodes:
        for c in n.children:
            par[c.id] = n.id
    return par


def brute_force_minimal(nodes, failure_set):
    par = parents(nodes)
    ids = [n.id for n in nodes]
    for size in range(len(ids) + 1):
        for combo in combinations(ids, size):
            kept = set(combo)
            if not failure_set <= kept:
                continue
            if all(par.get(i) is None or par[i] in kept for i in kept):
                return kept
    raise AssertionError("the full test always fails")


def percent(num, den):
    if den == 0:
        return "0.00"
    hundredths = floor(Fraction(num, den) * 10000 + Fraction(1, 2))
    return f"{hundredths // 100}.{hundredths % 100:02d}"


def record(name, project, nodes, kept):
    stmts = len(nodes)
    tn = sum(n.tree for n in nodes)
    ntn = stmts - tn
    atrs = sum(n.tree for n in nodes if n.id not in kept)
    antrs = sum(not n.tree for n in nodes if n.id not in kept)
    ars = atrs + antrs
    prntrs = percent(antrs, ntn) if ntn else ""
    prtrs = percent(atrs, tn) if tn else ""
    return (f"{name},{project},{stmts},{ntn},{tn},{ars},{percent(ars, stmts)},"
            f"{antrs},{percent(antrs, stmts)},{atrs},{percent(atrs, stmts)},{prntrs},{prtrs}")


def tree_document(rng, name, project, source, roots, nodes):
    # Arbitrary, shuffled external ids exercise the renumbering on ingest.
    ext = {n.id: 100 + 7 * j for j, n in enumerate(rng.sample(nodes, len(nodes)))}
    docs = []
    for n in nodes:
        kind = n.kind
        if not n.tree and rng.random() < 0.15:
            kind = "AssertStmt"  # unknown leaf kind
        d = {"id": ext[n.id], "kind": kind, "has_children": n.tree,
             "span": list(n.span), "children": [ext[c.id] for c in n.children]}
        if n.braceless:
            d["braceless_slot"] = True
        docs.append(d)
    rng.shuffle(docs)
    return {"test_name": name, "project": project, "source": source,
            "nodes": docs, "roots": [ext[r.id] for r in roots]}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="data/corpus/synthetic", type=Path)
    ap.add_argument("--seed", default=20240611, type=int)
    ap.add_argument("--count", default=30, type=int)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    (args.out / "tests").mkdir(parents=True, exist_ok=True)
    (args.out / "trees").mkdir(parents=True, exist_ok=True)
    entries = []
    rows = ["test,project,stmts,ntn,tn,ars,prs,antrs,pntrs,atrs,ptrs,prntrs,prtrs"]
    for i in range(1, args.count + 1):
        name = f"synth{i:02d}"
        project = ["alpha", "beta", "gamma"][i % 3]
        source, roots, nodes = make_test(rng, name)
        failure = set(rng.sample([n.id for n in nodes], rng.randint(1, min(3, len(nodes)))))
        kept = brute_force_minimal(nodes, failure)
        entry = {"name": name, "project": project,
                 "oracle": {"mode": "scripted", "failure_sets": [sorted(failure)]}}
        if i % 4 == 0:
            doc = tree_document(rng, name, project, source, roots, nodes)
            path = args.out / "trees" / f"{name}.json"
            path.write_text(json.dumps(doc, indent=2) + "\n")
            entry["tree"] = f"trees/{name}.json"
        else:
            (args.out / "tests" / f"{name}.java").write_text(source)
            entry["test"] = f"tests/{name}.java"
        entries.append(entry)
        rows.append(record(name, project, nodes, kept))

    config = {"corpus_name": "synthetic", "output_dir": "../../../out/synthetic",
              "policy": "same", "parallelism": 4, "entries": entries}
    (args.out / "corpus.json").write_text(json.dumps(config, indent=2) + "\n")
    (args.out / "expected_records.csv").write_text("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
