from pathlib import Path
from typing import Any

from django import forms
from django.conf import settings

from .config import OBSERVATION_MODES
from .events import parse_word


class ManifestForm(forms.Form):
    g1 = forms.CharField()
    g2 = forms.CharField()
    spec = forms.CharField()
    sigma_k = forms.CharField()
    coordinator = forms.CharField(required=False)
    observation = forms.ChoiceField(choices=[(mode, mode) for mode in OBSERVATION_MODES], required=False)

    def __init__(self, *args, base_dir: Path = Path('.'), **kwargs):
        super().__init__(*args, **kwargs)
        self.base_dir = Path(base_dir)

    def _existing(self, name: str) -> Path:
        path = self.base_dir / self.cleaned_data[name]
        if not path.is_file():
            raise forms.ValidationError(f"file {path} does not exist")
        return path

    def clean_g1(self):
        return self._existing('g1')

    def clean_g2(self):
        return self._existing('g2')

    def clean_spec(self):
        return self._existing('spec')

    def clean_sigma_k(self):
        names = parse_word(self.cleaned_data['sigma_k'])
        if len(set(names)) != len(names):
            raise forms.ValidationError("sigma_k lists an event twice")
        return frozenset(names)

    def clean_coordinator(self):
        value = self.cleaned_data.get('coordinator')
        if not value or value == 'auto':
            return None
        return self._existing('coordinator')

    def clean_observation(self):
        return self.cleaned_data.get('observation') or getattr(settings, 'SUPERVISORY_OBSERVATION', OBSERVATION_MODES[1])

    def clean(self) -> dict[str, Any]:
        cleaned_data = super().clean()
        unknown = set(self.data) - set(self.fields)
        if unknown:
            raise forms.ValidationError(f"unknown keys {sorted(unknown)}")
        return cleaned_data
