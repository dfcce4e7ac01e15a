package ui;

public class LoginActivity extends Activity {
  public void setupUI(View view) {
    if (!(view instanceof EditText)) {
      view.setOnTouchListener(new View.OnTouchListener() {
        public boolean onTouch(View v, MotionEvent event) {
          Utils.toggleSoftKeyBoard(LoginActivity.this, true);
          return false;
        }
      });
    }
    if (view instanceof ViewGroup) {
      for (int i = 0; i < ((ViewGroup) view).getChildCount(); i++) {
        View innerView = ((ViewGroup) view).getChildAt(i);
        setupUI(innerView);
      }
    }
  }
}
