"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 precondition or construction-condition
failure, 4 budget exceeded / inconclusive search.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import construct as C
from .bitfn import BinaryMatrix, BooleanFunction, SingularMatrixError
from .classify import (
    BudgetExceeded,
    classify_plateaued,
    ea_equivalent_small,
    ea_fingerprint,
    is_partially_bent,
    linear_structures,
    support_rank,
)
from .spectral import autocorrelation, extract_dual, is_bent, plateaued_profile, wht
from .textio import (
    ParseError,
    format_function,
    format_support,
    parse_basis,
    parse_function,
    parse_matrix,
    parse_permutation,
    parse_vector,
    read_support,
)
from .transform import AlphaNotAffine, NotPlateauedSource, decompose_form27, hou_langevin_transform

EXIT_OK, EXIT_PARSE, EXIT_CONDITION, EXIT_BUDGET = 0, 2, 3, 4


@dataclass(frozen=True)
class AnalysisReport:
    n: int
    weight: int
    degree: int
    plateaued: dict | None
    bent: bool
    support_size: int
    classification: str  # "trivial" | "nontrivial" | "neither"
    support_rank: int
    lambda_dim: int
    partially_bent: bool
    autocorr_nonzero_count: int
    function: dict | None = None
    dual: dict | None = None

    def to_json(self) -> dict:
        return asdict(self)


def analyze(f: BooleanFunction, with_dual: bool = True) -> AnalysisReport:
    S = wht(f).support()
    prof = plateaued_profile(f)
    cls = classify_plateaued(f)
    dual = None
    if prof is not None and with_dual:
        d = extract_dual(f)
        dual = format_function(d.base)
    return AnalysisReport(
        n=f.n,
        weight=f.weight,
        degree=f.degree,
        plateaued=None if prof is None else {"s": prof.s, "amplitude": prof.amplitude},
        bent=is_bent(f),
        support_size=len(S),
        classification="neither" if cls.kind == "not-plateaued" else cls.kind,
        support_rank=support_rank(S),
        lambda_dim=linear_structures(f).dim,
        partially_bent=is_partially_bent(f),
        autocorr_nonzero_count=autocorrelation(f).nonzero_count(),
        function=format_function(f),
        dual=dual,
    )


def _summary(rep: AnalysisReport) -> str:
    lines = [
        f"function   {rep.function['anf']}",
        f"           {rep.function['tt']}",
        f"n = {rep.n}, weight = {rep.weight}, degree = {rep.degree}",
    ]
    if rep.plateaued:
        lines.append(f"{rep.plateaued['s']}-plateaued, amplitude {rep.plateaued['amplitude']}, {rep.classification}")
    elif rep.bent:
        lines.append("bent")
    else:
        lines.append("not plateaued")
    lines.append(f"support size {rep.support_size}, support rank {rep.support_rank}, dim Lambda = {rep.lambda_dim}")
    lines.append(f"#R = {rep.autocorr_nonzero_count}, partially bent: {'yes' if rep.partially_bent else 'no'}")
    if rep.dual:
        lines.append(f"dual       {rep.dual['anf']}")
    return "\n".join(lines)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _emit_function(args, f: BooleanFunction, extra: dict | None = None) -> None:
    rep = analyze(f)
    payload = {"function": format_function(f), "analysis": rep.to_json(), **(extra or {})}
    _emit(args, payload, _summary(rep))


def _split_functions(text: str, n: int | None = None) -> list[BooleanFunction]:
    return [parse_function(t, n) for t in text.split(",") if t.strip()]


def _cM(args, m: int) -> tuple[int, BinaryMatrix | None]:
    c = parse_vector(args.c, m) if args.c else 0
    M = parse_matrix(args.M, m) if args.M else None
    return c, M


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    f = parse_function(args.function)
    rep = analyze(f)
    _emit(args, rep.to_json(), _summary(rep))
    return EXIT_OK


def cmd_construct_spectral(args) -> int:
    sup = read_support(args.support)
    g = parse_function(args.dual, sup.dim)
    f = C.construct_spectral(sup, g)
    _emit_function(args, f)
    return EXIT_OK


def cmd_construct_thm41(args) -> int:
    psi = parse_permutation(Path(args.psi).read_text())
    k = len(psi).bit_length() - 1
    t = parse_function(args.t, k) if args.t else None
    cols = [parse_function(x) for x in args.cols.split(",")]
    c, M = _cM(args, 2 * k)
    f = C.construct_thm41(psi, t, cols, c, M)
    _emit_function(args, f)
    return EXIT_OK


def cmd_construct_thm42(args) -> int:
    psi = parse_permutation(Path(args.psi).read_text())
    k = len(psi).bit_length() - 1
    c, M = _cM(args, 2 * k)
    f = C.construct_thm42(
        args.variant,
        psi,
        E1=parse_basis(args.E1 or "", k),
        E2=parse_basis(args.E2 or "", k),
        L=parse_basis(args.L or "", k),
        c=c,
        M=M,
    )
    _emit_function(args, f)
    return EXIT_OK


def cmd_construct_thm43(args) -> int:
    H = C.VectorialBent.mm_field(args.k, args.lam)
    cols = [int(x) for x in args.columns.split(",") if x.strip()] if args.columns else []
    affine = _split_functions(args.affine, H.m) if args.affine else []
    c, M = _cM(args, H.m)
    f = C.construct_thm43(H, args.dual_index, affine, cols, c, M)
    _emit_function(args, f)
    return EXIT_OK


def cmd_family(args) -> int:
    base = read_support(args.base)
    duals = [parse_function(ln, base.dim) for ln in Path(args.duals).read_text().split() if ln.strip()]
    fam = C.disjoint_family(base, duals)
    members = [format_function(f) for f in fam.members]
    payload = {
        "n": fam.n,
        "s": fam.s,
        "shifts": list(fam.shifts),
        "members": members,
        "base_support": base.matrix_rows(),
        "support_rank": support_rank(base.as_set()),
        "lambda_dims": [linear_structures(f).dim for f in fam.members],
    }
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "family.json").write_text(json.dumps(payload, indent=2))
        (out / "base.support").write_text(format_support(base, with_decomposition=True))
        for i, f in enumerate(fam.members):
            (out / f"member_{i}.txt").write_text(format_function(f)["tt"] + "\n")
    text = [f"{len(members)} disjoint-spectra {fam.s}-plateaued members on F_2^{fam.n}"]
    text += [f"  f_{i}: {m['anf']}" for i, m in enumerate(members)]
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def _load_family(path: Path) -> list[BooleanFunction]:
    if path.is_dir():
        meta = path / "family.json"
        if meta.exists():
            data = json.loads(meta.read_text())
            return [parse_function(m["tt"]) for m in data["members"]]
        files = sorted(path.glob("member_*.txt"), key=lambda p: int(p.stem.split("_")[1]))
        return [parse_function(p.read_text()) for p in files]
    return [parse_function(ln) for ln in path.read_text().split() if ln.strip()]


def cmd_concat(args) -> int:
    members = _load_family(Path(args.family))
    fam = C.family_from_members(members)
    F = C.concat_bent(fam)
    _emit_function(args, F, {"bent": True})
    return EXIT_OK


def cmd_transform_hl(args) -> int:
    f = parse_function(args.function)
    i, j = (int(x) for x in args.vars.split(","))
    d = decompose_form27(f, i, j)
    F = hou_langevin_transform(d)
    fp_f, fp_F = ea_fingerprint(f), ea_fingerprint(F)
    diff = fp_f.differences(fp_F)
    rep = analyze(F)
    vc = wht(F).value_counts()
    payload = {
        "function": format_function(F),
        "analysis": rep.to_json(),
        "spectrum": {str(k): v for k, v in sorted(vc.items())},
        "fingerprint_differences": diff,
        "fingerprints": [fp_f.to_json(), fp_F.to_json()],
    }
    text = _summary(rep) + "\nspectrum values " + ", ".join(f"{k}: {v}" for k, v in sorted(vc.items()))
    text += "\nfingerprint vs input: " + ("identical" if not diff else "differs in " + ", ".join(diff))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_equiv(args) -> int:
    f = parse_function(args.f)
    h = parse_function(args.h, f.n)
    budget = None if args.exhaustive else args.budget
    v = ea_equivalent_small(f, h, budget=budget)
    text = v.status + (f": {v.reason}" if v.reason else "")
    if v.witness is not None:
        w = v.witness.to_json()
        text += f"\nA = {' '.join(w['A'])}\nb = {w['b']}  c = {w['c']}  eps = {w['eps']}"
    _emit(args, v.to_json(), text)
    return EXIT_BUDGET if v.status == "inconclusive" else EXIT_OK


def cmd_search_duals(args) -> int:
    sup = read_support(args.support)
    res = C.search_duals(sup, samples=args.samples, seed=args.seed, keep=args.list)
    payload = {"count": res.count, "candidates": res.candidates, "exhaustive": res.exhaustive}
    text = f"{res.count} valid duals among {res.candidates} candidates" + ("" if res.exhaustive else " (sampled)")
    if args.list:
        payload["duals"] = [format_function(g) for g in res.duals]
        text += "\n" + "\n".join(format_function(g)["anf"] for g in res.duals)
    _emit(args, payload, text)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON only")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized operations")

    p = argparse.ArgumentParser(prog="plateau", description="Design and classify plateaued Boolean functions.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="spectral and structural report")
    a.add_argument("function")
    a.set_defaults(func=cmd_analyze)

    con = sub.add_parser("construct", help="build a plateaued function")
    csub = con.add_subparsers(dest="method", required=True)

    s = csub.add_parser("spectral", parents=[common], help="support file + dual")
    s.add_argument("--support", required=True)
    s.add_argument("--dual", required=True)
    s.set_defaults(func=cmd_construct_spectral)

    def affine_args(q):
        q.add_argument("--c", help="offset vector as a binary string")
        q.add_argument("--M", help="invertible matrix as row-major bits")

    t1 = csub.add_parser("thm41", parents=[common], help="MM dual over an affine block with y-columns")
    t1.add_argument("--psi", required=True, help="permutation file")
    t1.add_argument("--t", help="function t(y) added to the MM dual")
    t1.add_argument("--cols", required=True, help="comma-separated column functions of y")
    affine_args(t1)
    t1.set_defaults(func=cmd_construct_thm41)

    t2 = csub.add_parser("thm42", parents=[common], help="semi-bent from C/D-class column")
    t2.add_argument("--variant", required=True, type=str.upper, choices=["C", "D"])
    t2.add_argument("--psi", required=True)
    t2.add_argument("--E1")
    t2.add_argument("--E2")
    t2.add_argument("--L")
    affine_args(t2)
    t2.set_defaults(func=cmd_construct_thm42)

    t3 = csub.add_parser("thm43", parents=[common], help="vectorial bent components as columns")
    t3.add_argument("--k", type=int, required=True, help="half dimension of the dual space")
    t3.add_argument("--lam", type=int, required=True, help="number of vectorial bent components")
    t3.add_argument("--dual-index", type=int, required=True)
    t3.add_argument("--columns", default="", help="comma-separated component indices")
    t3.add_argument("--affine", help="comma-separated affine column functions")
    affine_args(t3)
    t3.set_defaults(func=cmd_construct_thm43)

    fa = sub.add_parser("family", parents=[common], help="disjoint-spectra family on shifted supports")
    fa.add_argument("--base", required=True, help="base support file")
    fa.add_argument("--duals", required=True, help="file with one dual per line")
    fa.add_argument("--out", help="directory to write the family to")
    fa.set_defaults(func=cmd_family)

    cc = sub.add_parser("concat", parents=[common], help="concatenate a family into a bent function")
    cc.add_argument("--family", required=True, help="family directory or member list file")
    cc.set_defaults(func=cmd_concat)

    tr = sub.add_parser("transform", help="nonlinear input transforms")
    tsub = tr.add_subparsers(dest="kind", required=True)
    hl = tsub.add_parser("hou-langevin", parents=[common])
    hl.add_argument("function")
    hl.add_argument("--vars", default="1,2", help="pivot variables i,j")
    hl.set_defaults(func=cmd_transform_hl)

    eq = sub.add_parser("equiv", parents=[common], help="EA-equivalence evidence")
    eq.add_argument("f")
    eq.add_argument("h")
    eq.add_argument("--exhaustive", action="store_true", help="no budget")
    eq.add_argument("--budget", type=int, default=2_000_000)
    eq.set_defaults(func=cmd_equiv)

    sd = sub.add_parser("search-duals", parents=[common], help="count duals valid for a support")
    sd.add_argument("support")
    sd.add_argument("--samples", type=int, help="sample budget when exhaustive search is infeasible")
    sd.add_argument("--list", action="store_true", help="also list the duals")
    sd.set_defaults(func=cmd_search_duals)
    return p


def _plain(obj):
    return obj.tolist() if hasattr(obj, "tolist") else list(obj)


def _fail(args, exc: Exception, code: int) -> int:
    print(f"error: {exc}", file=sys.stderr)
    if getattr(args, "json", False):
        payload = {"error": str(exc), "exit_code": code}
        for key in ("witness", "position"):
            val = getattr(exc, key, None)
            if val is not None:
                payload[key] = val
        print(json.dumps(payload, indent=2, sort_keys=True, default=_plain))
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        return _fail(args, exc, EXIT_PARSE)
    except BudgetExceeded as exc:
        return _fail(args, exc, EXIT_BUDGET)
    except (C.ConditionError, AlphaNotAffine, NotPlateauedSource, SingularMatrixError, ValueError) as exc:
        return _fail(args, exc, EXIT_CONDITION)


if __name__ == "__main__":
    sys.exit(main())
