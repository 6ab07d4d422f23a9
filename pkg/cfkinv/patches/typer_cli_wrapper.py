from dataclasses import fields, is_dataclass
from functools import wraps
from inspect import Parameter, signature
from typing import Any, Callable, Dict, Tuple

import typer
from typer.models import CommandFunctionType, DefaultPlaceholder

# TODO: drop the signature patching once typer supports global options: https://github.com/tiangolo/typer/issues/153


class Typer(typer.Typer):
    """Typer app whose callback and commands all accept the options of one or more dataclasses.

    The dataclass fields are appended to the signature of every decorated function as keyword-only
    options; on invocation the dataclass is instantiated (running its ``__post_init__``) and the
    merged values are stored in ``ctx.common_params``. The decorated function itself only receives
    the parameters it declares.
    """

    base_callback: Callable[..., Callable[[CommandFunctionType], CommandFunctionType]] = typer.Typer.callback
    base_command: Callable[..., Callable[[CommandFunctionType], CommandFunctionType]] = typer.Typer.command

    def __init__(self, *options_types, **kwargs):
        super().__init__(**kwargs)
        self.options_types = self._check_option_types(options_types)
        self.info.callback = self.callback()(self.info.callback)

    def _check_option_types(self, options_types: Tuple[Any, ...] = ()) -> Tuple[Any, ...]:
        if not options_types:
            return getattr(self, "options_types", ())
        for option_type in options_types:
            if not is_dataclass(option_type):
                raise ValueError(f"'{option_type.__name__}' is not a dataclass!")
        return tuple(options_types)

    def _wrap(self, base: Callable[..., Any], options_types: Tuple[Any, ...], **kwargs):
        def decorator(__f):
            if isinstance(__f, DefaultPlaceholder) or __f is None:
                return __f

            passed_args = list(signature(__f).parameters.keys())

            @wraps(__f)
            def wrapper(*__args, **__kwargs):
                if len(__args) > 0:
                    raise RuntimeError("Positional arguments are not supported")
                for option in options_types:
                    self._patch_wrapper_kwargs(option, **__kwargs)
                return __f(**{key: value for key, value in __kwargs.items() if key in passed_args})

            for option in options_types:
                self._patch_command_sig(wrapper, option)
            return base(self, **kwargs)(wrapper)

        return decorator

    def callback(self, *options_types, **kwargs) -> Callable[[CommandFunctionType], CommandFunctionType]:
        if not (options_types := self._check_option_types(options_types)):
            return self.base_callback(**kwargs)
        return self._wrap(type(self).base_callback, options_types, **kwargs)

    def command(self, *options_types, **kwargs) -> Callable[[CommandFunctionType], CommandFunctionType]:
        if not (options_types := self._check_option_types(options_types)):
            return self.base_command(**kwargs)
        return self._wrap(type(self).base_command, options_types, **kwargs)

    @staticmethod
    def _patch_wrapper_kwargs(options_type, **kwargs) -> Dict[str, Any]:
        if (ctx := kwargs.get("ctx")) is None:
            raise RuntimeError("Context should be provided")

        common_opts_params: Dict[str, Any] = {}
        instance = getattr(options_type, "instance", None)
        if instance is not None and getattr(instance, "ctx", None) in (ctx, ctx.parent):
            common_opts_params.update(instance.__dict__)

        for field in fields(options_type):
            if field.metadata.get("ignore", False):
                continue
            value = kwargs.get(field.name)
            if value == field.default and field.name in common_opts_params:
                continue
            common_opts_params[field.name] = value

        options_type(**common_opts_params)
        setattr(ctx, "common_params", common_opts_params)
        return common_opts_params

    @staticmethod
    def _patch_command_sig(__w, options_type) -> None:
        sig = signature(__w)
        new_parameters = dict(sig.parameters)

        for field in fields(options_type):
            if field.metadata.get("ignore", False):
                continue
            new_parameters[field.name] = Parameter(
                name=field.name,
                kind=Parameter.KEYWORD_ONLY,
                default=field.default,
                annotation=field.type,
            )

        # stable: the injected keyword-only options go last
        sorted_parameters = sorted(new_parameters.values(), key=lambda p: p.kind)
        setattr(__w, "__signature__", sig.replace(parameters=sorted_parameters))
