import re
from fractions import Fraction
from typing import List, Tuple

from .algebra_core import FieldSpec
from .exceptions import (InvalidNumberError, NotALieElementError, ParseError,
                         UnexpectedEndOfInputError, UnexpectedTokenError, UnknownSymbolError)
from .free_assoc import AssocElement, FreeAssocAlgebra
from .free_lie import FreeLieAlgebra, LieElement, assoc_to_lie
from .tokenizer import Token, Tokenizer, TokenType

MODULE_VARIABLE = "y"
_VARIABLE_PATTERN = re.compile(r"v([1-9][0-9]*)")


class ExpressionParser:
    """
    Recursive-descent parser for noncommutative polynomials:

        expr   := ['+' | '-'] term (('+' | '-') term)*
        term   := factor ('*' factor)*
        factor := NUMBER ['/' NUMBER] | IDENT | '(' expr ')' | '[' expr ',' expr ']' | '-' factor

    Brackets are commutators, so Lie expressions parse into the envelope.
    """

    def __init__(self, text: str, algebra: FreeAssocAlgebra):
        self.text = text
        self.algebra = algebra
        self.symbols = {name: i for i, name in enumerate(algebra.names)}
        self.tokenizer = Tokenizer(text)
        self.tokens = self.tokenizer.tokenize()
        self.current_token: Token = None
        self._advance()

    def _advance(self):
        """Advances to the next token."""
        try:
            self.current_token = next(self.tokens)
        except StopIteration:
            self.current_token = Token(TokenType.EOF, None, self.tokenizer.line, self.tokenizer.column)

    def _eat(self, expected_type: TokenType):
        if self.current_token.type == expected_type:
            self._advance()
        elif self.current_token.type == TokenType.EOF:
            raise UnexpectedEndOfInputError(
                expected_type.name, self.current_token.line, self.current_token.column)
        else:
            raise UnexpectedTokenError(
                expected_type.name,
                self.current_token.type.name,
                self.current_token.line,
                self.current_token.column,
            )

    def parse(self) -> AssocElement:
        value = self._parse_expr()
        if self.current_token.type != TokenType.EOF:
            raise ParseError(
                "Extra input after expression",
                self.current_token.line,
                self.current_token.column,
            )
        return value

    def _parse_expr(self) -> AssocElement:
        negate = False
        if self.current_token.type in (TokenType.PLUS, TokenType.MINUS):
            negate = self.current_token.type == TokenType.MINUS
            self._advance()
        value = self._parse_term()
        if negate:
            value = -value
        while self.current_token.type in (TokenType.PLUS, TokenType.MINUS):
            subtract = self.current_token.type == TokenType.MINUS
            self._advance()
            term = self._parse_term()
            value = value - term if subtract else value + term
        return value

    def _parse_term(self) -> AssocElement:
        value = self._parse_factor()
        while self.current_token.type == TokenType.STAR:
            self._eat(TokenType.STAR)
            value = value * self._parse_factor()
        return value

    def _parse_factor(self) -> AssocElement:
        token = self.current_token
        if token.type == TokenType.NUMBER:
            return self._parse_number()
        elif token.type == TokenType.IDENT:
            if token.value not in self.symbols:
                raise UnknownSymbolError(token.value, list(self.algebra.names), token.line, token.column)
            self._advance()
            return self.algebra.generator(self.symbols[token.value])
        elif token.type == TokenType.LEFT_PAREN:
            self._eat(TokenType.LEFT_PAREN)
            value = self._parse_expr()
            self._eat(TokenType.RIGHT_PAREN)
            return value
        elif token.type == TokenType.LEFT_BRACKET:
            self._eat(TokenType.LEFT_BRACKET)
            left = self._parse_expr()
            self._eat(TokenType.COMMA)
            right = self._parse_expr()
            self._eat(TokenType.RIGHT_BRACKET)
            return left * right - right * left
        elif token.type == TokenType.MINUS:
            self._advance()
            return -self._parse_factor()
        elif token.type == TokenType.EOF:
            raise UnexpectedEndOfInputError("number, symbol, '(' or '['", token.line, token.column)
        raise UnexpectedTokenError("number, symbol, '(' or '['", token.type.name, token.line, token.column)

    def _parse_number(self) -> AssocElement:
        token = self.current_token
        numerator = token.value
        self._eat(TokenType.NUMBER)
        if self.current_token.type != TokenType.SLASH:
            return self.algebra.scalar(numerator)
        self._eat(TokenType.SLASH)
        denominator_token = self.current_token
        self._eat(TokenType.NUMBER)
        if denominator_token.value == 0:
            raise InvalidNumberError(f"{numerator}/0", token.line, token.column)
        value = Fraction(numerator, denominator_token.value)
        try:
            return self.algebra.scalar(value)
        except (ZeroDivisionError, ValueError):
            raise InvalidNumberError(f"{numerator}/{denominator_token.value}", token.line, token.column)


def identifiers(text: str) -> List[Token]:
    return [t for t in Tokenizer(text).tokenize() if t.type == TokenType.IDENT]


def parse_assoc(text: str, algebra: FreeAssocAlgebra) -> AssocElement:
    return ExpressionParser(text, algebra).parse()


def parse_lie(text: str, algebra: FreeLieAlgebra) -> LieElement:
    """Parses a Lie polynomial over the generators of algebra."""
    value = parse_assoc(text, algebra.assoc)
    try:
        return assoc_to_lie(algebra, value)
    except NotALieElementError as e:
        raise ParseError(f"'{text}' is not a Lie polynomial ({e})")


def _variable_count(tokens: List[Token], extra: Tuple[str, ...] = ()) -> int:
    indices = set()
    for token in tokens:
        if token.value in extra:
            continue
        match = _VARIABLE_PATTERN.fullmatch(token.value)
        if match is None:
            raise UnknownSymbolError(token.value, list(extra) + ["v1", "v2", "..."], token.line, token.column)
        indices.add(int(match.group(1)))
    count = max(indices, default=0)
    if indices != set(range(1, count + 1)):
        missing = sorted(set(range(1, count + 1)) - indices)
        raise ParseError(f"Variables must be numbered contiguously from v1; missing v{missing[0]}")
    return count


def variable_names(count: int) -> Tuple[str, ...]:
    return tuple(f"v{i + 1}" for i in range(count))


def parse_identity(text: str, field_spec: FieldSpec) -> AssocElement:
    """
    Parses a representation identity "y*v(v1,...,vk)" and returns the body v as an
    element of the free associative algebra on v1..vk.
    """
    tokens = identifiers(text)
    count = _variable_count(tokens, (MODULE_VARIABLE,))
    names = (MODULE_VARIABLE,) + variable_names(count)
    ambient = FreeAssocAlgebra(field_spec, names, max(len(tokens), 1))
    value = parse_assoc(text, ambient)
    body_algebra = FreeAssocAlgebra(field_spec, variable_names(count), ambient.degree)
    body = {}
    for word, coefficient in value.terms.items():
        if not word or word[0] != 0 or 0 in word[1:]:
            raise ParseError(
                f"Every term of an identity must be {MODULE_VARIABLE} times a word in the variables: "
                f"'{ambient.render_word(word)}'")
        body[tuple(letter - 1 for letter in word[1:])] = coefficient
    result = body_algebra.element(body)
    if not result:
        raise ParseError(f"Identity '{text}' is zero")
    return result


def parse_lie_identity(text: str, field_spec: FieldSpec) -> LieElement:
    """Parses a Lie identity such as "[[v1,v2],v3]" over the free Lie algebra on its variables."""
    tokens = identifiers(text)
    count = _variable_count(tokens)
    algebra = FreeLieAlgebra(FreeAssocAlgebra(field_spec, variable_names(count), max(len(tokens), 1)))
    result = parse_lie(text, algebra)
    if not result:
        raise ParseError(f"Lie identity '{text}' is zero")
    return result


def render_identity(body: AssocElement) -> str:
    """Inverse of parse_identity up to term order."""
    if len(body.terms) == 1:
        word, coefficient = next(iter(body.terms.items()))
        if coefficient == 1:
            return f"{MODULE_VARIABLE}*{body.algebra.render_word(word)}" if word else MODULE_VARIABLE
    return f"{MODULE_VARIABLE}*({body})"
