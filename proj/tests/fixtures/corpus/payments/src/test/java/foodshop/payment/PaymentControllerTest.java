package foodshop.payment;

import org.springframework.web.client.RestTemplate;

public class PaymentControllerTest {
    private final RestTemplate client = new RestTemplate();

    void smoke() {
        client.getForObject("http://payment-svc/api/v1/health", String.class);
    }
}
