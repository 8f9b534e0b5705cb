"""Standard presentations used by tests, scripts and the acceptance suite."""

from .rewriting import RewritingSystem, check_complete


def _make(letters, rules, order=None):
    return check_complete(RewritingSystem.from_strings(letters, rules, order))


def bicyclic():
    return _make("ab", [("ab", "")])


def z2():
    return _make("a", [("aa", "")])


def integers():
    return _make("ab", [("ab", ""), ("ba", "")])


def s3():
    return _make("st", [("ss", ""), ("tt", ""), ("tst", "sts")])


def s3_relators():
    """S3 as a Coxeter presentation; not complete until Knuth-Bendix runs."""
    return RewritingSystem.from_strings("st", [("ss", ""), ("tt", ""), ("ststst", "")])


def free(rank):
    return _make("abc"[:rank], [])


def free_commutative():
    return _make("ab", [("ba", "ab")])


def trivial():
    return _make("", [])


FINITE = {"z2": z2, "s3": s3, "trivial": trivial}

ALL = {
    "bicyclic": bicyclic,
    "z2": z2,
    "integers": integers,
    "s3": s3,
    "free1": lambda: free(1),
    "free2": lambda: free(2),
    "free3": lambda: free(3),
    "free_commutative": free_commutative,
    "trivial": trivial,
}
