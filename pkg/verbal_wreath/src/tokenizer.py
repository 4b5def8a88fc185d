import re
from enum import Enum, auto
from typing import Any, Generator, NamedTuple

from .exceptions import InvalidNumberError, ParseError


class TokenType(Enum):
    PLUS = auto()  # +
    MINUS = auto()  # -
    STAR = auto()  # *
    SLASH = auto()  # /
    LEFT_PAREN = auto()  # (
    RIGHT_PAREN = auto()  # )
    LEFT_BRACKET = auto()  # [
    RIGHT_BRACKET = auto()  # ]
    COMMA = auto()  # ,
    NUMBER = auto()
    IDENT = auto()
    EOF = auto()  # End of input


class Token(NamedTuple):
    type: TokenType
    value: Any
    line: int
    column: int

    def __repr__(self):
        if self.type in (TokenType.NUMBER, TokenType.IDENT):
            return f"Token({self.type.name}, {repr(self.value)}, line={self.line}, col={self.column})"
        return f"Token({self.type.name}, line={self.line}, col={self.column})"


_PUNCTUATION = {
    "+": TokenType.PLUS,
    "-": TokenType.MINUS,
    "*": TokenType.STAR,
    "/": TokenType.SLASH,
    "(": TokenType.LEFT_PAREN,
    ")": TokenType.RIGHT_PAREN,
    "[": TokenType.LEFT_BRACKET,
    "]": TokenType.RIGHT_BRACKET,
    ",": TokenType.COMMA,
}

_IDENT_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER_PATTERN = re.compile(r"[0-9]+")


class Tokenizer:
    """Splits an algebraic expression such as "2*[x1,x2] - x2*x1" into tokens."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1
        self.length = len(text)

    def _advance(self, count: int = 1):
        for _ in range(count):
            if self.pos < self.length:
                if self.text[self.pos] == "\n":
                    self.line += 1
                    self.column = 1
                else:
                    self.column += 1
                self.pos += 1
            else:
                break

    def _skip_whitespace(self):
        while self.pos < self.length and self.text[self.pos].isspace():
            self._advance()

    def _read_number(self) -> Token:
        start_line, start_column = self.line, self.column
        match = _NUMBER_PATTERN.match(self.text, self.pos)
        number_str = match.group(0)
        end = match.end()
        # digits glued to letters ("2x1") are not a number
        if end < self.length and (self.text[end].isalpha() or self.text[end] in "._"):
            tail = _IDENT_PATTERN.match(self.text, end)
            bad = number_str + (tail.group(0) if tail else self.text[end])
            raise InvalidNumberError(bad, start_line, start_column)
        self._advance(len(number_str))
        return Token(TokenType.NUMBER, int(number_str), start_line, start_column)

    def _read_ident(self) -> Token:
        start_line, start_column = self.line, self.column
        name = _IDENT_PATTERN.match(self.text, self.pos).group(0)
        self._advance(len(name))
        return Token(TokenType.IDENT, name, start_line, start_column)

    def tokenize(self) -> Generator[Token, None, None]:
        while self.pos < self.length:
            self._skip_whitespace()

            if self.pos >= self.length:
                break

            char = self.text[self.pos]
            start_line, start_column = self.line, self.column

            if char in _PUNCTUATION:
                self._advance()
                yield Token(_PUNCTUATION[char], char, start_line, start_column)
            elif char.isdigit():
                yield self._read_number()
            elif char.isalpha() or char == "_":
                yield self._read_ident()
            else:
                raise ParseError(f"Unexpected character: '{char}'", start_line, start_column)

        yield Token(TokenType.EOF, None, self.line, self.column)
