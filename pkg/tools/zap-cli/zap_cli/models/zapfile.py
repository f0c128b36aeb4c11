"""
ZapFile Model - text format for augmented clause theories

A zap file is line oriented:

    c any comment
    p zap <num_vars>
    a <lit> <lit> ... 0
    g <cycles>
    g <cycles>

Each `a` line is the base clause of one augmented clause; the `g` lines that
follow it are generators of its group in cycle notation over signed literals,
e.g. `g (1 2)(-1 -2)` or `g (1 -1)(2 -2)`. A clause without `g` lines has the
trivial group, so a zap file without any `g` line is an ordinary CNF.

Usage:
    >>> zap = parse_zap(Path("php3.zap").read_text())
    >>> clauses = zap.to_augmented()
    >>> text = write_zap(ZapFile.from_augmented(clauses, zap.num_vars))
"""

from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

from jinja2 import Environment, PackageLoader
from pydantic import BaseModel, Field, field_validator, model_validator

from zap_engine import AugmentedClause, Clause, PermGroup, format_cycles, parse_cycles, parse_dimacs
from zap_engine.errors import ParseError, TautologyError, ZapError

_env = Environment(
    loader=PackageLoader("zap_cli", "templates"),
    trim_blocks=True,
    lstrip_blocks=True,
)


def render(template: str, **context) -> str:
    """Render one of the package templates."""
    return _env.get_template(template).render(**context)


class ZapClauseModel(BaseModel):
    """
    One augmented clause as written in a zap file.

    Attributes:
        literals: Base clause as DIMACS integers
        generators: Group generators in cycle notation (empty = trivial group)
    """

    literals: List[int] = Field(default_factory=list, description="Base clause literals")
    generators: List[str] = Field(default_factory=list, description="Generators in cycle notation")

    @field_validator("literals")
    @classmethod
    def validate_literals(cls, v: List[int]) -> List[int]:
        """Literals are nonzero and the clause is not a tautology."""
        if 0 in v:
            raise ValueError("Literal 0 is the clause terminator, not a literal")
        Clause(v)
        return v

    @property
    def max_var(self) -> int:
        return max((abs(lit) for lit in self.literals), default=0)


class ZapFile(BaseModel):
    """
    A parsed zap file.

    Attributes:
        num_vars: Variable count from the `p zap` header
        clauses: Augmented clauses in file order
        comments: Comment lines (without the leading `c `)
    """

    num_vars: int = Field(..., ge=0, description="Number of variables")
    clauses: List[ZapClauseModel] = Field(default_factory=list)
    comments: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_space(self):
        """Every literal and generator lives in the declared variable space."""
        for i, clause in enumerate(self.clauses, start=1):
            if clause.max_var > self.num_vars:
                raise ValueError(
                    f"Clause {i} mentions variable {clause.max_var} beyond {self.num_vars}"
                )
            for text in clause.generators:
                parse_cycles(text, self.num_vars)
        return self

    @property
    def is_ground(self) -> bool:
        return all(not clause.generators for clause in self.clauses)

    def to_augmented(self) -> List[AugmentedClause]:
        """Engine clauses, one PermGroup per `a` line."""
        return [
            AugmentedClause(
                Clause(clause.literals),
                PermGroup(self.num_vars, [parse_cycles(g, self.num_vars) for g in clause.generators]),
            )
            for clause in self.clauses
        ]

    @classmethod
    def from_augmented(
        cls,
        clauses: Sequence[Union[AugmentedClause, Clause]],
        num_vars: int,
        comments: Iterable[str] = (),
    ) -> "ZapFile":
        models = []
        for c in clauses:
            if isinstance(c, AugmentedClause):
                gens = [format_cycles(g) for g in c.group.generators]
                models.append(ZapClauseModel(literals=list(c.base), generators=gens))
            else:
                models.append(ZapClauseModel(literals=list(c)))
        return cls(num_vars=num_vars, clauses=models, comments=list(comments))

    def to_text(self) -> str:
        return write_zap(self)

    def save(self, path: Path) -> None:
        Path(path).write_text(self.to_text())


def _is_comment(line: str) -> bool:
    return line.startswith("c") and (len(line) == 1 or line[1].isspace())


def parse_zap(text: str) -> ZapFile:
    """
    Parse zap file text.

    Raises ParseError with line (and column where known), TautologyError for a
    clause with clashing literals, WnConflict / NotBijective for generators
    that are not sign-respecting permutations.
    """
    num_vars: Optional[int] = None
    comments: List[str] = []
    clauses: List[ZapClauseModel] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if _is_comment(line):
            comments.append(line[1:].strip())
            continue
        tag, _, rest = line.partition(" ")
        if tag == "p":
            if num_vars is not None:
                raise ParseError("Duplicate header", line=lineno)
            parts = rest.split()
            if len(parts) != 2 or parts[0] != "zap" or not parts[1].isdigit():
                raise ParseError(f"Expected 'p zap <vars>', got '{line}'", line=lineno)
            num_vars = int(parts[1])
        elif tag in ("a", "g") and num_vars is None:
            raise ParseError(f"'{tag}' line before header", line=lineno)
        elif tag == "a":
            clauses.append(_parse_clause(raw, lineno, num_vars))
        elif tag == "g":
            if not clauses:
                raise ParseError("Generator before any clause", line=lineno)
            offset = raw.index("g") + 1
            try:
                g = parse_cycles(raw[offset:], num_vars)
            except ParseError as exc:
                column = exc.column + offset if exc.column is not None else None
                raise ParseError(exc.message, line=lineno, column=column) from None
            except ZapError as exc:
                raise type(exc)(f"line {lineno}: {exc}") from None
            clauses[-1].generators.append(format_cycles(g))
        else:
            raise ParseError(f"Unknown line type '{tag}'", line=lineno, column=raw.index(tag) + 1)

    if num_vars is None:
        raise ParseError("Missing header 'p zap <vars>'")
    return ZapFile(num_vars=num_vars, clauses=clauses, comments=comments)


def _parse_clause(raw: str, lineno: int, num_vars: int) -> ZapClauseModel:
    tokens = raw.split()[1:]
    literals = []
    column = raw.index("a") + 2
    for i, token in enumerate(tokens):
        column = raw.find(token, column - 1) + 1
        try:
            lit = int(token)
        except ValueError:
            raise ParseError(f"Bad literal '{token}'", line=lineno, column=column) from None
        if lit == 0:
            if i != len(tokens) - 1:
                raise ParseError("Literals after terminating 0", line=lineno, column=column)
            break
        if abs(lit) > num_vars:
            raise ParseError(
                f"Literal {lit} exceeds declared {num_vars} variables", line=lineno, column=column
            )
        literals.append(lit)
        column += len(token)
    else:
        raise ParseError("Clause is not terminated by 0", line=lineno)
    try:
        Clause(literals)
    except TautologyError as exc:
        raise TautologyError(f"line {lineno}: {exc}") from None
    return ZapClauseModel(literals=literals)


def write_zap(zap: ZapFile) -> str:
    """Render a ZapFile; generators come out in canonical cycle form."""
    clauses = [
        {
            "literals": clause.literals,
            "generators": [format_cycles(parse_cycles(g, zap.num_vars)) for g in clause.generators],
        }
        for clause in zap.clauses
    ]
    return render("zap_file.j2", comments=zap.comments, num_vars=zap.num_vars, clauses=clauses)


def read_theory(text: str) -> ZapFile:
    """Parse a zap file or, when the header says `p cnf`, a DIMACS CNF."""
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("p"):
            if line.split()[1:2] == ["cnf"]:
                num_vars, clauses = parse_dimacs(text)
                return ZapFile.from_augmented(clauses, num_vars)
            break
    return parse_zap(text)
