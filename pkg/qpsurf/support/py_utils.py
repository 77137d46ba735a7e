from concurrent.futures import ThreadPoolExecutor, as_completed
from enum import Enum, EnumMeta
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Tuple, TypeVar, Union

from qpsurf.support.logs import project_logger

UNDEFINED = object()

S = TypeVar('S')
Requests = Union[List[dict], Dict[Hashable, dict]]

_LOGGER = project_logger(__file__)


class VerboseEnumMeta(EnumMeta):
    def __getitem__(cls, key):
        return cls.from_string(key)

    def from_string(cls, key):
        if isinstance(key, cls):
            return key
        lookup = str(key).strip().lower()
        for member in cls:
            if member.value == lookup:
                return member
        raise AttributeError(f'Invalid {cls.__name__}: {key!r}, expected one of {cls.values()}')

    def values(cls) -> List[str]:
        return [member.value for member in cls]


class VerboseEnum(str, Enum, metaclass=VerboseEnumMeta):
    """
    String enumeration that can be looked up by its value, case-insensitively.

    Values are expected to be lowercase, the way they appear on the command line and in JSON reports.
    """

    def __str__(self):
        return self.value

    def __repr__(self):
        return f'{self.__class__.__name__}.{self.value}'

    def __lt__(self, other):
        return self.value < other.value


def execute_with_key(key, func: Callable, *args, **kwargs) -> Tuple[Hashable, object]:
    try:
        return key, func(*args, **kwargs)
    except Exception as e:
        return key, e


def execute_in_parallel(func: Callable, requests: Requests, max_workers: int = None) -> Union[dict, list]:
    """
    Calls a function once per request on a thread pool.

    Parameters:
        func (Callable): The function to call.
        requests (list[dict] or dict[Hashable, dict]): Requests holding 'args' and 'kwargs' of one call each, either in
            a list or keyed by a unique identifier.
        max_workers (int, optional): Size of the thread pool.

    Returns:
        Union[dict, list]: One result per request, in the order or under the keys of 'requests'.

    Note:
        - An exception raised by a call is returned as that call's result.
        - Results do not depend on completion order.
    """
    keyed = dict(enumerate(requests)) if isinstance(requests, list) else dict(requests)

    results = {}
    with ThreadPoolExecutor(max_workers=max_workers, thread_name_prefix=getattr(func, '__name__', 'qpsurf')) as executor:
        futures = [
            executor.submit(execute_with_key, key, func, *request.get('args', []), **request.get('kwargs', {}))
            for key, request in keyed.items()
        ]
        for future in as_completed(futures):
            key, result = future.result()
            results[key] = result

    if isinstance(requests, list):
        return [results[index] for index in range(len(requests))]
    return {key: results[key] for key in keyed}


def first_error(results: Iterable) -> Optional[Exception]:
    return next((result for result in results if isinstance(result, Exception)), None)


def group_by(items: Iterable[S], key: Callable[[S], Hashable]) -> Dict[Hashable, List[S]]:
    groups = {}
    for item in items:
        groups.setdefault(key(item), []).append(item)
    return groups
